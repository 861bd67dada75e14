#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gate.hpp"

/*! \file kernels.hpp
 *  \brief Data-parallel loops over all 2^n basis states.
 *
 * Each kernel has a serial reference and an OpenMP version producing
 * identical results; the dispatching overload picks the OpenMP path once the
 * state space reaches `kParallelThreshold`.
 */

namespace mqm::kernels
{

inline constexpr std::size_t kParallelThreshold = std::size_t{ 1 } << 14;

std::vector<Minterm> simulate_serial( std::span<const GateMasks> gates, unsigned n );
std::vector<Minterm> simulate_parallel( std::span<const GateMasks> gates, unsigned n );
std::vector<Minterm> simulate( std::span<const GateMasks> gates, unsigned n );

/// Sorted x with (x ^ perm[x]) & mask != 0.
std::vector<Minterm> difference_members_serial( std::span<const Minterm> perm, Minterm mask );
std::vector<Minterm> difference_members_parallel( std::span<const Minterm> perm, Minterm mask );
std::vector<Minterm> difference_members( std::span<const Minterm> perm, Minterm mask );

/// Smallest x with a[x] != b[x].
std::optional<Minterm> first_mismatch_serial( std::span<const Minterm> a, std::span<const Minterm> b );
std::optional<Minterm> first_mismatch_parallel( std::span<const Minterm> a, std::span<const Minterm> b );
std::optional<Minterm> first_mismatch( std::span<const Minterm> a, std::span<const Minterm> b );

/// |V_i| for every line i = 1..n, one pass over the permutation.
std::vector<std::size_t> difference_counts_serial( std::span<const Minterm> perm, unsigned n );
std::vector<std::size_t> difference_counts_parallel( std::span<const Minterm> perm, unsigned n );
std::vector<std::size_t> difference_counts( std::span<const Minterm> perm, unsigned n );

} // namespace mqm::kernels
