#pragma once

#include "zcs/strategy.hpp"

namespace zcs {

struct SynthesisConfig {
    size_t cap = 0;
    ViewSemantics semantics = ViewSemantics::literal;
    uint64_t budget_ms = 0; // 0 = unlimited
};

struct BudgetExceeded : Error {
    using Error::Error;
};

/**
 * Bounded backtracking synthesis: assigns a controllable-action subset to
 * each (process, view) pair discovered while expanding sigma-plays in
 * canonical breadth-first order, subsets enumerated by size then letter
 * order. Returns the first assignment (in that enumeration order) whose
 * plays all stay within the cap and whose maximal plays all end final;
 * nullopt when no strategy wins within the cap.
 */
std::optional<Strategy> synthesize(const Game& g, const SynthesisConfig& cfg);

// Independent re-verification of a synthesized (or any) strategy.
Verdict certify(const Game& g, const Strategy& s, size_t cap);

} // namespace zcs
