#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rfsmc/program.hpp"

namespace rfsmc {

/// Syntax or validation error in a program text, with a 1-based location.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// Parses the line-oriented program language:
///
///   actors <n>
///   mailbox <name> | mutex <name> | semaphore <name> tokens <k> | barrier <name> size <k>
///   actor <name>:
///     send <mbox> [-> <var>]
///     recv <mbox> [from <actor>] -> <var>
///     wait <var> | waitall <var>...
///     lock | async_lock | mutex_wait | unlock <mutex>
///     acquire | async_acquire | sem_wait | release <sem>
///     barrier | arrive | barrier_wait <barrier>
///     local | fail
///
/// `#` starts a comment. Statements are indented under their actor.
Program parse_program(std::string_view text);

/// Inverse of parse_program; async/wait pairs are folded back into sugar.
std::string emit_program(const Program& program);

}  // namespace rfsmc
