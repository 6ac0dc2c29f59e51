// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
/**
 * @file
 * Randomized and oracle-equivalence property suites, one per construction step.
 * Every case is replayable from (tag, descriptor, seed); failing cases carry a
 * JSON counterexample.
 *
 * Tags:
 *   isometry-cut        capped blocks of site-dependent chains are isometries;
 *                       per-cut conditioning is gauge invariant
 *   lcu-optimal         exact decompositions with total weight equal to the trace norm
 *   subspace-reflection reflection identities and the orthogonality of the
 *                       complementary state used by the amplification step
 *   deterministic-merge amplified merges succeed with certainty; padding identity
 *   merge-depth         counted merge depth obeys the per-merge recursion bound
 *   isometry-all-n      uniform capped blocks are isometries for n = 1, 2, 3;
 *                       maximally mixed weights give maximal cap rank
 *   uniform-exact       compiled uniform MPUs reproduce the dense operator
 *   nonuniform-exact    compiled site-dependent chains reproduce the dense operator
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpuforge/json_io.hpp"

namespace mpuforge {

struct PropertyCase {
    std::string tag;
    std::string descriptor;
    bool trivial = false;
    std::uint64_t seed = 0;
    double tol = 0.0;
    double value = 0.0; ///< measured quantity compared against tol
    bool passed = false;
    std::string error;  ///< exception message, if any
    json counterexample; ///< filled for failing cases
};

struct SuiteReport {
    std::string tag;
    std::uint64_t seed = 0;
    std::vector<PropertyCase> cases;

    [[nodiscard]] bool passed() const;
    [[nodiscard]] json to_json() const;
};

std::vector<std::string> lemma_tags();

/// Runs every case of @p tag; throws ValidationError for an unknown tag.
SuiteReport run_lemma_suite(const std::string &tag, std::uint64_t seed = 1);

} // namespace mpuforge
