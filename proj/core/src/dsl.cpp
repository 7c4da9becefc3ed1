#include "rfsmc/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <map>
#include <sstream>
#include <vector>

namespace rfsmc {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

struct Token {
  std::string text;
  std::size_t column = 0;
};

struct Line {
  std::size_t number = 0;
  bool indented = false;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view raw = text.substr(start, end - start);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    Line line{number, !raw.empty() && (raw.front() == ' ' || raw.front() == '\t'), {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      if (raw[i] == ' ' || raw[i] == '\t') {
        ++i;
        continue;
      }
      const std::size_t col = i + 1;
      if (raw.substr(i, 2) == "->") {
        line.tokens.push_back({"->", col});
        i += 2;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw.substr(j, 2) != "->") ++j;
      line.tokens.push_back({std::string(raw.substr(i, j - i)), col});
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lines_(tokenize(text)) {}

  Program parse() {
    declare();
    statements();
    try {
      return builder_.build();
    } catch (const ProgramError& e) {
      if (e.actor() && e.statement()) {
        const auto& where = stmt_loc_.at(index_of(*e.actor())).at(*e.statement());
        throw ParseError(where.first, where.second, e.what());
      }
      throw ParseError(1, 1, e.what());
    }
  }

 private:
  [[noreturn]] void fail(const Line& l, const Token& t, const std::string& msg) const {
    throw ParseError(l.number, t.column, msg);
  }
  [[noreturn]] void fail_end(const Line& l, const std::string& msg) const {
    const Token& last = l.tokens.back();
    throw ParseError(l.number, last.column + last.text.size(), msg);
  }

  const Token& arg(const Line& l, std::size_t i, std::string_view what) const {
    if (i >= l.tokens.size()) fail_end(l, "expected " + std::string(what));
    return l.tokens[i];
  }

  void expect_end(const Line& l, std::size_t i) const {
    if (i < l.tokens.size()) fail(l, l.tokens[i], "unexpected '" + l.tokens[i].text + "'");
  }

  std::string name_arg(const Line& l, std::size_t i, std::string_view what) const {
    const Token& t = arg(l, i, what);
    if (!is_identifier(t.text)) fail(l, t, "invalid " + std::string(what) + " '" + t.text + "'");
    return t.text;
  }

  std::int64_t int_arg(const Line& l, std::size_t i, std::string_view what) const {
    const Token& t = arg(l, i, what);
    std::int64_t v = 0;
    const auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || p != t.text.data() + t.text.size() || v < 0)
      fail(l, t, "expected a non-negative integer for " + std::string(what) + ", got '" + t.text + "'");
    return v;
  }

  void keyword(const Line& l, std::size_t i, std::string_view kw) const {
    const Token& t = arg(l, i, "'" + std::string(kw) + "'");
    if (t.text != kw) fail(l, t, "expected '" + std::string(kw) + "', got '" + t.text + "'");
  }

  void add_name(const Line& l, const Token& t, const std::string& name) {
    if (!names_.insert({name, true}).second) fail(l, t, "duplicate name '" + name + "'");
  }

  // Pass 1: header, declarations, actor headers.
  void declare() {
    bool header = false;
    std::size_t declared_actors = 0;
    const Line* header_line = nullptr;
    for (const Line& l : lines_) {
      const Token& kw = l.tokens[0];
      if (l.indented) {
        if (actor_count_ == 0) fail(l, kw, "statement outside an actor block");
        continue;
      }
      if (!header) {
        if (kw.text != "actors") fail(l, kw, "expected 'actors <n>' header");
        declared_actors = static_cast<std::size_t>(int_arg(l, 1, "actor count"));
        expect_end(l, 2);
        header = true;
        header_line = &l;
        continue;
      }
      if (kw.text == "actors") fail(l, kw, "duplicate 'actors' header");
      if (kw.text == "mailbox" || kw.text == "mutex") {
        const std::string name = name_arg(l, 1, kw.text + " name");
        add_name(l, l.tokens[1], name);
        expect_end(l, 2);
        kw.text == "mailbox" ? builder_.mailbox(name) : builder_.mutex(name);
      } else if (kw.text == "semaphore") {
        const std::string name = name_arg(l, 1, "semaphore name");
        add_name(l, l.tokens[1], name);
        keyword(l, 2, "tokens");
        const auto k = int_arg(l, 3, "tokens");
        expect_end(l, 4);
        builder_.semaphore(name, static_cast<std::int32_t>(k));
      } else if (kw.text == "barrier") {
        const std::string name = name_arg(l, 1, "barrier name");
        add_name(l, l.tokens[1], name);
        keyword(l, 2, "size");
        const auto k = int_arg(l, 3, "size");
        if (k == 0) fail(l, l.tokens[3], "barrier size must be positive");
        expect_end(l, 4);
        builder_.barrier(name, static_cast<std::uint32_t>(k));
      } else if (kw.text == "actor") {
        std::size_t next = 2;
        const Token& nt = arg(l, 1, "actor name");
        std::string name = nt.text;
        if (!name.empty() && name.back() == ':') {
          name.pop_back();
        } else {
          keyword(l, 2, ":");
          next = 3;
        }
        if (!is_identifier(name)) fail(l, nt, "invalid actor name '" + name + "'");
        if (actors_.count(name)) fail(l, nt, "duplicate actor '" + name + "'");
        expect_end(l, next);
        actors_[name] = builder_.actor(name);
        ++actor_count_;
      } else {
        fail(l, kw, "unknown declaration '" + kw.text + "'");
      }
    }
    if (!header) throw ParseError(1, 1, "missing 'actors <n>' header");
    if (declared_actors != actor_count_)
      throw ParseError(header_line->number, header_line->tokens[1].column,
                       "header declares " + std::to_string(declared_actors) + " actors but " +
                           std::to_string(actor_count_) + " are defined");
    if (actor_count_ > kMaxActors) throw ParseError(header_line->number, 1, "too many actors");
  }

  ObjectId object(const Line& l, std::size_t i, ObjectKind kind) {
    const Token& t = arg(l, i, std::string(to_string(kind)) + " name");
    const auto id = probe_.find_object(t.text);
    if (!id) fail(l, t, "undeclared " + std::string(to_string(kind)) + " '" + t.text + "'");
    if (id->kind != kind)
      fail(l, t, "'" + t.text + "' is a " + std::string(to_string(id->kind)) + ", not a " + std::string(to_string(kind)));
    return *id;
  }

  struct Var {
    std::uint32_t stmt = 0;
    bool waited = false;
  };

  std::uint32_t use_var(const Line& l, const Token& t, std::map<std::string, Var>& vars) {
    const auto it = vars.find(t.text);
    if (it == vars.end()) fail(l, t, "undefined variable '" + t.text + "'");
    if (it->second.waited) fail(l, t, "variable '" + t.text + "' already waited");
    it->second.waited = true;
    return it->second.stmt;
  }

  void bind_var(const Line& l, const Token& t, std::map<std::string, Var>& vars, std::uint32_t stmt) {
    if (!is_identifier(t.text)) fail(l, t, "invalid variable name '" + t.text + "'");
    if (!vars.emplace(t.text, Var{stmt, false}).second) fail(l, t, "variable '" + t.text + "' already bound");
  }

  // Pass 2: statements.
  void statements() {
    probe_ = builder_snapshot();
    stmt_loc_.assign(actor_count_, {});
    std::optional<ActorId> current;
    std::map<std::string, Var> vars;
    for (const Line& l : lines_) {
      if (!l.indented) {
        if (l.tokens[0].text == "actor") {
          std::string name = l.tokens[1].text;
          if (name.back() == ':') name.pop_back();
          current = actors_.at(name);
          vars.clear();
        }
        continue;
      }
      const ActorId a = *current;
      const Token& kw = l.tokens[0];
      const std::string& k = kw.text;
      if (k == "send") {
        const ObjectId m = object(l, 1, ObjectKind::Mailbox);
        std::string var;
        if (l.tokens.size() > 2) {
          keyword(l, 2, "->");
          var = arg(l, 3, "variable").text;
          expect_end(l, 4);
        }
        const auto s = builder_.send(a, m, var);
        if (!var.empty()) bind_var(l, l.tokens[3], vars, s);
      } else if (k == "recv") {
        const ObjectId m = object(l, 1, ObjectKind::Mailbox);
        std::size_t i = 2;
        std::optional<ActorId> from;
        if (i < l.tokens.size() && l.tokens[i].text == "from") {
          const Token& ft = arg(l, i + 1, "actor name");
          if (ft.text != "any") {
            const auto it = actors_.find(ft.text);
            if (it == actors_.end()) fail(l, ft, "unknown actor '" + ft.text + "'");
            from = it->second;
          }
          i += 2;
        }
        keyword(l, i, "->");
        const Token& vt = arg(l, i + 1, "variable");
        expect_end(l, i + 2);
        const auto s = builder_.recv(a, m, from, vt.text);
        bind_var(l, vt, vars, s);
      } else if (k == "wait") {
        const Token& vt = arg(l, 1, "variable");
        expect_end(l, 2);
        builder_.wait(a, use_var(l, vt, vars));
      } else if (k == "waitall") {
        arg(l, 1, "variable");
        std::vector<std::uint32_t> stmts;
        for (std::size_t i = 1; i < l.tokens.size(); ++i) stmts.push_back(use_var(l, l.tokens[i], vars));
        builder_.wait_all(a, stmts);
      } else if (k == "lock" || k == "async_lock" || k == "mutex_wait" || k == "unlock") {
        const ObjectId m = object(l, 1, ObjectKind::Mutex);
        expect_end(l, 2);
        if (k == "lock") builder_.lock(a, m);
        else if (k == "async_lock") builder_.async_lock(a, m);
        else if (k == "mutex_wait") builder_.mutex_wait(a, m);
        else builder_.unlock(a, m);
      } else if (k == "acquire" || k == "async_acquire" || k == "sem_wait" || k == "release") {
        const ObjectId s = object(l, 1, ObjectKind::Semaphore);
        expect_end(l, 2);
        if (k == "acquire") builder_.acquire(a, s);
        else if (k == "async_acquire") builder_.async_acquire(a, s);
        else if (k == "sem_wait") builder_.sem_wait(a, s);
        else builder_.release(a, s);
      } else if (k == "barrier" || k == "arrive" || k == "barrier_wait") {
        const ObjectId b = object(l, 1, ObjectKind::Barrier);
        expect_end(l, 2);
        if (k == "barrier") builder_.barrier_sync(a, b);
        else if (k == "arrive") builder_.arrive(a, b);
        else builder_.barrier_wait(a, b);
      } else if (k == "local" || k == "fail") {
        expect_end(l, 1);
        k == "local" ? builder_.local(a) : builder_.fail(a);
      } else {
        fail(l, kw, "unknown statement '" + k + "'");
      }
      auto& loc = stmt_loc_[index_of(a)];
      while (loc.size() < builder_.statement_count(a)) loc.emplace_back(l.number, kw.column);
    }
  }

  // Objects are all declared in pass 1; a statement-free copy resolves names.
  Program builder_snapshot() const {
    ProgramBuilder copy = builder_;
    return copy.build();
  }

  std::vector<Line> lines_;
  ProgramBuilder builder_;
  Program probe_;
  std::map<std::string, bool> names_;
  std::map<std::string, ActorId> actors_;
  std::size_t actor_count_ = 0;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> stmt_loc_;
};

std::string comm_var(const Action& post, std::uint32_t stmt) {
  return post.var.empty() ? "c" + std::to_string(stmt) : post.var;
}

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).parse(); }

std::string emit_program(const Program& p) {
  std::ostringstream os;
  os << "actors " << p.actor_count() << '\n';
  for (const auto& m : p.mailboxes()) os << "mailbox " << m << '\n';
  for (const auto& m : p.mutexes()) os << "mutex " << m << '\n';
  for (const auto& s : p.semaphores()) os << "semaphore " << s.name << " tokens " << s.tokens << '\n';
  for (const auto& b : p.barriers()) os << "barrier " << b.name << " size " << b.size << '\n';
  for (std::size_t ai = 0; ai < p.actor_count(); ++ai) {
    const ActorId a = actor_at(ai);
    const auto& st = p.statements(a);
    std::vector<bool> waited(st.size(), false);
    for (const auto& s : st)
      for (const auto& c : s.comm_refs) waited[c.stmt] = true;
    os << "actor " << p.actor(a).name << ":\n";
    for (std::size_t i = 0; i < st.size(); ++i) {
      const Action& s = st[i];
      const auto obj = [&] { return p.object_name(*s.object); };
      const auto pair_with = [&](ActionKind second) {
        return i + 1 < st.size() && st[i + 1].kind == second && st[i + 1].object == s.object;
      };
      os << "  ";
      switch (s.kind) {
        case ActionKind::AsyncSend:
          os << "send " << obj();
          if (waited[i] || !s.var.empty()) os << " -> " << comm_var(s, static_cast<std::uint32_t>(i));
          break;
        case ActionKind::AsyncRecv:
          os << "recv " << obj();
          if (s.source_filter) os << " from " << p.actor(*s.source_filter).name;
          os << " -> " << comm_var(s, static_cast<std::uint32_t>(i));
          break;
        case ActionKind::Wait:
        case ActionKind::WaitAll:
          os << (s.kind == ActionKind::Wait ? "wait" : "waitall");
          for (const auto& c : s.comm_refs) os << ' ' << comm_var(p.comm(c), c.stmt);
          break;
        case ActionKind::MutexAsyncLock:
          if (pair_with(ActionKind::MutexWait)) {
            os << "lock " << obj();
            ++i;
          } else {
            os << "async_lock " << obj();
          }
          break;
        case ActionKind::MutexWait: os << "mutex_wait " << obj(); break;
        case ActionKind::MutexUnlock: os << "unlock " << obj(); break;
        case ActionKind::SemAsyncAcquire:
          if (pair_with(ActionKind::SemWait)) {
            os << "acquire " << obj();
            ++i;
          } else {
            os << "async_acquire " << obj();
          }
          break;
        case ActionKind::SemWait: os << "sem_wait " << obj(); break;
        case ActionKind::SemRelease: os << "release " << obj(); break;
        case ActionKind::BarrierAsyncArrive:
          if (pair_with(ActionKind::BarrierWait)) {
            os << "barrier " << obj();
            ++i;
          } else {
            os << "arrive " << obj();
          }
          break;
        case ActionKind::BarrierWait: os << "barrier_wait " << obj(); break;
        case ActionKind::LocalStep: os << "local"; break;
        case ActionKind::Fail: os << "fail"; break;
      }
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace rfsmc
