#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rfsmc/program.hpp"

namespace rfsmc::bench {

/// Three actors: P1 and P2 send to P3's mailbox, P3 receives from any then
/// from P2. `rounds` shared barrier rounds separate the sends from the
/// receives; `pad` LocalSteps precede each send.
Program mpi_any(std::uint32_t rounds, std::uint32_t pad = 0);

/// Philosopher i locks fork i, then fork (i+1) mod n, eats, unlocks both.
Program philosophers_mutex(std::uint32_t n);

/// philosophers_mutex(n) inside acquire/release of a semaphore with n tokens.
Program philosophers_semaphore(std::uint32_t n);

/// n actors, each sending once to one shared mailbox.
Program factorial_bench(std::uint32_t n);

/// mpi_any(rounds) where P3 spins on a flag mutex `polls` times before its
/// receives, and each sender touches the flag after sending.
Program busy_wait(std::uint32_t polls, std::uint32_t rounds = 1);

/// Every maximal execution crashes: all actors cross a barrier, then one fails.
Program all_faulty(std::uint32_t actors = 2);

struct RandomBounds {
  std::uint32_t min_actors = 2;
  std::uint32_t max_actors = 3;
  std::uint32_t max_statements = 12;
  bool allow_fail = true;
};

/// Well-formed random program: waits follow their posts, locks and acquires
/// are released by their owner, barrier arrivals are followed by waits.
Program random_program(std::uint64_t seed, const RandomBounds& bounds = {});

/// Names accepted by `make`.
const std::vector<std::string>& names();

/// Builds a named benchmark at the given scale; nullopt for unknown names.
std::optional<Program> make(std::string_view name, std::uint32_t scale);

}  // namespace rfsmc::bench
