#pragma once

#include <cstdint>
#include <string>

#include "bourgainlab/group.hpp"

namespace bourgainlab {

/**
 * Deterministic set generators addressed by spec strings:
 *   interval(m)            indices {0..m-1}
 *   random(alpha)          each index kept with probability alpha
 *   union_intervals(k,m)   k index intervals of length m at seeded starts
 *   coset(g1,g2,...)       subgroup generated by the listed indices,
 *                          translated by the smallest non-member
 *   behrend_like(b)        base-b digit restriction, densest square-sum class
 *   greedy_apfree(max)     greedy progression-free set, brute re-verified
 *
 * Identical (group, spec, seed) always produces the identical set.
 */
GroupSet gen_set(const GroupSpec& g, const std::string& spec, std::uint64_t seed);

}  // namespace bourgainlab
