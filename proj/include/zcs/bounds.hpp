#pragma once

#include "zcs/bigint.hpp"
#include "zcs/classify.hpp"

namespace zcs {

/// Exact big integer, or "too large for the bit budget".
struct BoundValue {
    std::optional<BigUint> exact;

    bool is_exact() const { return exact.has_value(); }
    std::string str() const { return exact ? exact->to_decimal() : "too-large"; }
    bool operator==(const BoundValue& o) const { return exact == o.exact; }
};

struct SPBoundNode {
    LetterSet letters = 0;
    SPKind kind = SPKind::leaf;
    LetterSet left_letters = 0, right_letters = 0;
    BoundValue left, right; // child bounds for par/sync nodes
    BoundValue value;
};

/**
 * Per-alphabet-node length bound: |Q| for a single letter, max of the
 * children for a parallel split, and
 *   K0*2^(|A0|^K0)*|A0|*|Q|^|P| + K1*2^(|A1|^K1)*|A1|*|Q|^|P|
 * for a synchronized split, with |Q| the number of global states.
 */
struct SPBoundReport {
    std::vector<SPBoundNode> nodes; // post-order; last node is the root
    BoundValue total;
    BigUint global_states;
    uint64_t process_count = 0;
    size_t max_bits = 0;
};

SPBoundReport bound_series_parallel(const SPTree& tree, const Game& g, size_t max_bits = 1 << 20);

struct KBoundNode {
    ProcessSet pool = 0;
    BigUint ramsey_m;     // 2^|pool|
    BoundValue max_sub;   // max over proper sub-pools of their K
    BoundValue inner;     // |A|^max_sub
    BoundValue second;    // N * 2^|A| * |A| * |Q|^|P| * 2^inner
    BoundValue ramsey;    // m^(m*second), the Ramsey upper bound
    BoundValue value;     // |Q| * ramsey ; 0 for the empty pool
};

/**
 * Pool bound: K of the empty pool is 0 and
 *   K_Q = |Q| * R(2^|pool|, N*2^|A|*|A|*|Q|^|P|*2^(|A|^max_{Q'⊊Q} K_Q'))
 * with R(m,n) replaced by the upper bound m^(m*n). |Q| reads as the number
 * of global states except inside 2^|pool|, which uses the pool size. Values
 * beyond max_bits bits are reported as too-large; the trace stays exact.
 */
struct KBoundReport {
    std::vector<KBoundNode> nodes; // all sub-pools, by (size, mask)
    BoundValue total;
    BigUint big_n;
    BigUint global_states;
    uint64_t process_count = 0;
    uint64_t action_count = 0;
    size_t max_bits = 0;
};

KBoundReport bound_K(const Game& g, ProcessSet pool, uint64_t n_param, size_t max_bits = 1 << 20);

// Re-evaluates a report from its recorded ingredients; true iff every node
// and the total reproduce exactly.
bool recompute_sp_report(const SPBoundReport& rep, const Game& g);
bool recompute_k_report(const KBoundReport& rep, const Game& g);

} // namespace zcs
