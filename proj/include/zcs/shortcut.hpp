#pragma once

#include "zcs/strategy.hpp"

namespace zcs {

/**
 * Witness that the thread (x, y) can be cut out of a strategy: xy is a
 * sigma-play, both x and xy are anchor-prime Q-broadcasts, every process has
 * the same state after x and xy, and the residual decisions after x and xy
 * coincide on pool-internal, anchor-independent plays. The caps record the
 * bounds the conditions were checked under.
 */
struct ThreadCertificate {
    Trace x;
    Trace y;
    ProcessSet pool = 0;
    LetterId anchor = 0;
    size_t explore_cap = 0;
    size_t broadcast_cap = 0;
    size_t cond8_cap = 0;
};

// Least prime extension v (by trace order, shorter first) with uv a play
// violating the broadcast disjunction: uv not prime, v not independent of
// the pool, dom(v) not inside the pool. Throws NotPrime if u is not prime.
std::optional<Trace> broadcast_violation(const Game& g, const Trace& u, ProcessSet pool,
                                         size_t v_cap);

// Prime-extension formulation of Q-broadcasts.
bool is_broadcast(const Game& g, const Trace& u, ProcessSet pool, size_t v_cap);

// Direct formulation: every maximal action of an extension that straddles the
// pool boundary must see u in its view. Kept separate so the two routes can
// be compared.
bool is_broadcast_def(const Game& g, const Trace& u, ProcessSet pool, size_t v_cap);

/// phi_{x,y}: u itself when x is not a prefix of u, else xyv for u = xv.
Trace shortcut_map(const Trace& x, const Trace& y, const Trace& u);

/**
 * All pairs (x, y) admitting a certificate, one certificate per pair (first
 * admissible pool). Pools tried: dom(y), its closure under the game's
 * ordering, and the full process set; with all_pools, every superset of
 * dom(y). Requires that exploration at `cap` did not exceed the bound.
 */
std::vector<ThreadCertificate> find_useless_threads(const Game& g, const Strategy& s, size_t cap,
                                                    bool all_pools = false);

// Re-validates the certificate, then rewrites the decision map so that the
// result behaves as s ∘ phi_{x,y}.
Strategy take_shortcut(const Game& g, const Strategy& s, const ThreadCertificate& c);

struct ReduceStep {
    ThreadCertificate cert;
    uint64_t dur_before = 0;
    uint64_t dur_after = 0;
};

/**
 * Repeatedly applies the first certificate (longest y first, then by x, y)
 * until no useless thread remains. Input must be Winning at the cap; every
 * intermediate strategy is re-verified Winning with strictly smaller
 * duration.
 */
std::pair<Strategy, std::vector<ReduceStep>> reduce(const Game& g, const Strategy& s, size_t cap,
                                                    bool all_pools = false);

} // namespace zcs
