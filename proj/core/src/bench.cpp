#include "rfsmc/bench.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace rfsmc::bench {

namespace {

std::string idx(std::string_view prefix, std::uint32_t i) { return std::string(prefix) + std::to_string(i); }

}  // namespace

Program mpi_any(std::uint32_t rounds, std::uint32_t pad) {
  ProgramBuilder b;
  const ObjectId m3 = b.mailbox("m3");
  std::optional<ObjectId> bar;
  if (rounds > 0) bar = b.barrier("b", 3);
  const ActorId p1 = b.actor("P1");
  const ActorId p2 = b.actor("P2");
  const ActorId p3 = b.actor("P3");
  for (ActorId sender : {p1, p2}) {
    for (std::uint32_t i = 0; i < pad; ++i) b.local(sender);
    b.send(sender, m3);
    for (std::uint32_t r = 0; r < rounds; ++r) b.barrier_sync(sender, *bar);
  }
  for (std::uint32_t r = 0; r < rounds; ++r) b.barrier_sync(p3, *bar);
  const auto ra = b.recv(p3, m3, std::nullopt, "a");
  b.wait(p3, ra);
  const auto rb = b.recv(p3, m3, p2, "b");
  b.wait(p3, rb);
  return b.build();
}

Program philosophers_mutex(std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("philosophers_mutex needs n >= 2");
  ProgramBuilder b;
  std::vector<ObjectId> forks;
  for (std::uint32_t i = 0; i < n; ++i) forks.push_back(b.mutex(idx("f", i)));
  for (std::uint32_t i = 0; i < n; ++i) {
    const ActorId a = b.actor(idx("Ph", i));
    b.lock(a, forks[i]);
    b.lock(a, forks[(i + 1) % n]);
    b.local(a);
    b.unlock(a, forks[i]);
    b.unlock(a, forks[(i + 1) % n]);
  }
  return b.build();
}

Program philosophers_semaphore(std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("philosophers_semaphore needs n >= 2");
  ProgramBuilder b;
  const ObjectId s = b.semaphore("s", static_cast<std::int32_t>(n));
  std::vector<ObjectId> forks;
  for (std::uint32_t i = 0; i < n; ++i) forks.push_back(b.mutex(idx("f", i)));
  for (std::uint32_t i = 0; i < n; ++i) {
    const ActorId a = b.actor(idx("Ph", i));
    b.acquire(a, s);
    b.lock(a, forks[i]);
    b.lock(a, forks[(i + 1) % n]);
    b.local(a);
    b.unlock(a, forks[i]);
    b.unlock(a, forks[(i + 1) % n]);
    b.release(a, s);
  }
  return b.build();
}

Program factorial_bench(std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("factorial_bench needs n >= 1");
  ProgramBuilder b;
  const ObjectId m = b.mailbox("m");
  for (std::uint32_t i = 0; i < n; ++i) b.send(b.actor(idx("S", i)), m);
  return b.build();
}

Program busy_wait(std::uint32_t polls, std::uint32_t rounds) {
  ProgramBuilder b;
  const ObjectId m3 = b.mailbox("m3");
  const ObjectId flag = b.mutex("flag");
  std::optional<ObjectId> bar;
  if (rounds > 0) bar = b.barrier("b", 3);
  const ActorId p1 = b.actor("P1");
  const ActorId p2 = b.actor("P2");
  const ActorId p3 = b.actor("P3");
  for (ActorId sender : {p1, p2}) {
    b.send(sender, m3);
    b.lock(sender, flag);
    b.unlock(sender, flag);
    for (std::uint32_t r = 0; r < rounds; ++r) b.barrier_sync(sender, *bar);
  }
  for (std::uint32_t i = 0; i < polls; ++i) {
    b.lock(p3, flag);
    b.unlock(p3, flag);
  }
  for (std::uint32_t r = 0; r < rounds; ++r) b.barrier_sync(p3, *bar);
  const auto ra = b.recv(p3, m3, std::nullopt, "a");
  b.wait(p3, ra);
  const auto rb = b.recv(p3, m3, p2, "b");
  b.wait(p3, rb);
  return b.build();
}

Program all_faulty(std::uint32_t actors) {
  if (actors < 1) throw std::invalid_argument("all_faulty needs at least one actor");
  ProgramBuilder b;
  const ObjectId bar = b.barrier("b", actors);
  for (std::uint32_t i = 0; i < actors; ++i) {
    const ActorId a = b.actor(idx("A", i));
    b.local(a);
    b.barrier_sync(a, bar);
    if (i == 0) b.fail(a);
  }
  return b.build();
}

Program random_program(std::uint64_t seed, const RandomBounds& bounds) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::uint32_t lo, std::uint32_t hi) {
    return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
  };

  ProgramBuilder b;
  const std::uint32_t n = pick(bounds.min_actors, std::max(bounds.min_actors, bounds.max_actors));
  const std::uint32_t mailboxes = pick(1, 2);
  std::vector<ObjectId> mbox;
  for (std::uint32_t i = 0; i < mailboxes; ++i) mbox.push_back(b.mailbox(idx("m", i)));
  std::optional<ObjectId> mu;
  if (pick(0, 1)) mu = b.mutex("mu");
  std::optional<ObjectId> sem;
  if (pick(0, 2) == 0) sem = b.semaphore("s", static_cast<std::int32_t>(pick(0, 2)));
  std::optional<ObjectId> bar;
  if (pick(0, 3) == 0) bar = b.barrier("b", pick(2, n));

  std::vector<ActorId> actors;
  for (std::uint32_t i = 0; i < n; ++i) actors.push_back(b.actor(idx("A", i)));

  // Round-robin budget so every actor gets some statements.
  std::int64_t budget = bounds.max_statements;
  std::vector<std::uint32_t> quota(n, 0);
  for (std::uint32_t i = 0; budget > 0; i = (i + 1) % n, --budget) ++quota[i];
  std::uniform_int_distribution<int> coin(0, 99);

  for (std::uint32_t ai = 0; ai < n; ++ai) {
    const ActorId a = actors[ai];
    std::int64_t left = pick(1, quota[ai]);
    std::vector<std::uint32_t> unwaited;
    bool failed = false;
    while (left > 0 && !failed) {
      const int roll = coin(rng);
      if (roll < 30) {
        const ObjectId m = mbox[pick(0, mailboxes - 1)];
        unwaited.push_back(b.send(a, m, idx("v", b.statement_count(a))));
        --left;
      } else if (roll < 55) {
        const ObjectId m = mbox[pick(0, mailboxes - 1)];
        std::optional<ActorId> from;
        if (pick(0, 2) == 0) from = actors[pick(0, n - 1)];
        if (from == a) from.reset();
        unwaited.push_back(b.recv(a, m, from, idx("v", b.statement_count(a))));
        --left;
      } else if (roll < 68 && !unwaited.empty()) {
        if (unwaited.size() >= 2 && pick(0, 1)) {
          b.wait_all(a, unwaited);
          unwaited.clear();
        } else {
          b.wait(a, unwaited.front());
          unwaited.erase(unwaited.begin());
        }
        --left;
      } else if (roll < 78 && mu && left >= 3) {
        b.lock(a, *mu);
        b.unlock(a, *mu);
        left -= 3;
      } else if (roll < 84 && sem && left >= 3) {
        b.acquire(a, *sem);
        b.release(a, *sem);
        left -= 3;
      } else if (roll < 90 && bar && left >= 2) {
        b.barrier_sync(a, *bar);
        left -= 2;
      } else if (roll < 93 && bounds.allow_fail) {
        b.fail(a);
        failed = true;
        --left;
      } else {
        b.local(a);
        --left;
      }
    }
  }
  return b.build();
}

const std::vector<std::string>& names() {
  static const std::vector<std::string> all = {"mpi_any",   "philosophers_mutex", "philosophers_semaphore",
                                               "factorial", "busy_wait",          "all_faulty"};
  return all;
}

std::optional<Program> make(std::string_view name, std::uint32_t scale) {
  if (name == "mpi_any") return mpi_any(scale);
  if (name == "philosophers_mutex") return philosophers_mutex(scale);
  if (name == "philosophers_semaphore") return philosophers_semaphore(scale);
  if (name == "factorial" || name == "factorial_bench") return factorial_bench(scale);
  if (name == "busy_wait") return busy_wait(scale);
  if (name == "all_faulty") return all_faulty(scale);
  return std::nullopt;
}

}  // namespace rfsmc::bench
