#pragma once

#include <cstdint>
#include <optional>

namespace arlink {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Returns p if q = p^s for a prime p and s >= 1.
std::optional<std::uint64_t> prime_power_base(std::uint64_t q);

/// Least non-negative residue of a modulo m (m > 0).
std::uint64_t floor_mod(std::int64_t a, std::uint64_t m);

/// A square root of a modulo the odd prime p, or nullopt if a is a non-residue.
/// Tonelli-Shanks; returns the smaller of the two roots.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p);

}  // namespace arlink
