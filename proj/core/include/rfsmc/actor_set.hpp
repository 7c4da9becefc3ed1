#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace rfsmc {

/// Dense actor identifier, 0..n-1 for an n-actor program.
enum class ActorId : std::uint8_t {};

inline constexpr std::size_t kMaxActors = 64;

constexpr std::size_t index_of(ActorId a) { return static_cast<std::size_t>(a); }
constexpr ActorId actor_at(std::size_t i) { return static_cast<ActorId>(i); }

/// Set of actors backed by a 64-bit mask.
class ActorSet {
 public:
  constexpr ActorSet() = default;
  constexpr ActorSet(std::initializer_list<ActorId> actors) {
    for (ActorId a : actors) insert(a);
  }

  constexpr bool contains(ActorId a) const { return (bits_ >> index_of(a)) & 1U; }
  constexpr void insert(ActorId a) { bits_ |= std::uint64_t{1} << index_of(a); }
  constexpr void erase(ActorId a) { bits_ &= ~(std::uint64_t{1} << index_of(a)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr std::uint64_t bits() const { return bits_; }

  /// Smallest member. Undefined on the empty set.
  constexpr ActorId first() const { return actor_at(static_cast<std::size_t>(std::countr_zero(bits_))); }

  constexpr ActorSet operator|(ActorSet o) const { return from_bits(bits_ | o.bits_); }
  constexpr ActorSet operator&(ActorSet o) const { return from_bits(bits_ & o.bits_); }
  constexpr ActorSet operator-(ActorSet o) const { return from_bits(bits_ & ~o.bits_); }
  constexpr bool operator==(const ActorSet&) const = default;

  template <typename F>
  constexpr void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      f(actor_at(static_cast<std::size_t>(std::countr_zero(b))));
    }
  }

  std::vector<ActorId> to_vector() const {
    std::vector<ActorId> out;
    out.reserve(size());
    for_each([&](ActorId a) { out.push_back(a); });
    return out;
  }

  static constexpr ActorSet from_bits(std::uint64_t bits) {
    ActorSet s;
    s.bits_ = bits;
    return s;
  }

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace rfsmc
