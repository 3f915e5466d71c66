/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "snowlab/sca/Cpa.h"
#include "snowlab/sca/Lda.h"
#include "snowlab/sim/Leakage.h"

namespace snowlab::sca {

/// Full-key recovery options.
struct RecoverOptions {
    /// Profiling set recorded with known keys on the same point layout as the
    /// attack set.  Required: it locates each target's leaky column
    /// (known-key correlation) and trains the low-bit classifier that
    /// resolves the four-way ghost ambiguity.
    const sim::TraceSet *profile = nullptr;
    /// Attack traces consumed per target (0 = all).
    std::size_t maxTraces = 0;
    /// A correlation peak below weakPeakFactor * 4/sqrt(n) is treated as
    /// noise and leaves the word unresolved instead of guessing.
    double weakPeakFactor = 3.0;
    /// Attack traces voted by the low-bit classifier (majority decides).
    std::size_t ldaVotes = 25;
    /// Externally supplied key words (index -> value), e.g. from a previous
    /// partial run.  They are taken as-is and feed dependent targets.
    std::map<int, snowv::Word16> overrideWords;
};

/// Outcome for one scheduled key word.
struct WordRecovery {
    int wordIndex = 0;
    Target target;
    std::optional<GhostSet> ghosts; // of the top low-half hypothesis
    std::optional<std::uint8_t> lowByte, highByte;
    std::optional<int> lsb;  // majority vote of the classifier
    double lowPeak = 0;      // signed peak of the winning low hypothesis
    double highPeak = 0;     // signed peak of the winning high hypothesis
    bool resolved = false;
    std::string note;          // why the word is unresolved, or "override"
    std::vector<int> dependsOn; // key words this target's equations consume
};

/// Report of one recovery run over the fixed-key attack set.
struct AttackReport {
    std::vector<WordRecovery> words; // in schedule order
    std::array<std::optional<snowv::Word16>, 16> recovered;
    bool complete = false;
    std::size_t tracesUsed = 0;

    /// The assembled key; unset unless all sixteen words resolved.
    std::optional<snowv::Key256> key() const;
};

/// Key words a target's known contribution consumes (empty for the twelve
/// dependency-free targets).
std::vector<int> dependencyWords(Target t);

/// The schedule: u0,v0 .. u6,v6 then u7,v7, which recovers every dependency
/// (k_0, k_8, k_9, k_10) before the four targets that consume one.
std::vector<Target> recoverySchedule();

/// Recovers the key behind a fixed-key attack set.  Per word: the profiling
/// set's known-key correlation locates the leaky column, a low-half
/// correlation attack ranks the 256 byte hypotheses, the trained classifier
/// votes the key word's low bit to pick one of the two positively correlated
/// ghosts, and a high-half attack finishes the word.  Weak peaks and missing
/// dependencies leave a word unresolved (with a note) rather than guessing;
/// the run continues so one bad word costs only its dependents.
AttackReport recoverKey(const sim::TraceSet &attack, const RecoverOptions &opt);

} // namespace snowlab::sca
