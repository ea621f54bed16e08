#include "zcs/bounds.hpp"

#include <algorithm>
#include <map>

namespace zcs {

namespace {

BoundValue bv(std::optional<BigUint> v) { return BoundValue{std::move(v)}; }

BoundValue bv_mul(const BoundValue& a, const BoundValue& b, size_t max_bits) {
    if (!a.exact || !b.exact) return bv(std::nullopt);
    BigUint r = *a.exact * *b.exact;
    if (r.bit_length() > max_bits) return bv(std::nullopt);
    return bv(std::move(r));
}

BoundValue bv_add(const BoundValue& a, const BoundValue& b, size_t max_bits) {
    if (!a.exact || !b.exact) return bv(std::nullopt);
    BigUint r = *a.exact + *b.exact;
    if (r.bit_length() > max_bits) return bv(std::nullopt);
    return bv(std::move(r));
}

BoundValue bv_pow(const BigUint& base, const BoundValue& exp, size_t max_bits) {
    if (!exp.exact) return bv(std::nullopt);
    return bv(BigUint::pow(base, *exp.exact, max_bits));
}

BoundValue bv_max(const BoundValue& a, const BoundValue& b) {
    if (!a.exact || !b.exact) return bv(std::nullopt);
    return bv(std::max(*a.exact, *b.exact));
}

BigUint global_states_big(const Game& g) {
    BigUint m(1);
    for (const auto& p : g.processes) m = m * BigUint(p.states.size());
    return m;
}

// one synchronized-case term: K * 2^(|A_i|^K) * |A_i| * |Q|^|P|
BoundValue sync_term(const BoundValue& k, LetterSet letters, const BigUint& q,
                     uint64_t p_count, size_t max_bits) {
    BigUint a_count(static_cast<uint64_t>(popcount(letters)));
    BoundValue inner = bv_pow(a_count, k, max_bits);
    BoundValue tower = bv_pow(BigUint(2), inner, max_bits);
    BoundValue qp = bv_pow(q, bv(BigUint(p_count)), max_bits);
    return bv_mul(bv_mul(bv_mul(k, tower, max_bits), bv(a_count), max_bits), qp, max_bits);
}

BoundValue sp_node_value(const SPBoundNode& node, const BigUint& q, uint64_t p_count,
                         size_t max_bits) {
    switch (node.kind) {
        case SPKind::leaf: return bv(q);
        case SPKind::par: return bv_max(node.left, node.right);
        default:
            return bv_add(sync_term(node.left, node.left_letters, q, p_count, max_bits),
                          sync_term(node.right, node.right_letters, q, p_count, max_bits),
                          max_bits);
    }
}

BoundValue sp_eval(const SPTree& t, const BigUint& q, uint64_t p_count, size_t max_bits,
                   std::vector<SPBoundNode>& out) {
    SPBoundNode node;
    node.letters = t.letters;
    node.kind = t.kind;
    if (t.kind != SPKind::leaf) {
        node.left = sp_eval(*t.left, q, p_count, max_bits, out);
        node.right = sp_eval(*t.right, q, p_count, max_bits, out);
        node.left_letters = t.left->letters;
        node.right_letters = t.right->letters;
    }
    node.value = sp_node_value(node, q, p_count, max_bits);
    out.push_back(node);
    return node.value;
}

// Ramsey part of the pool recursion, from the recorded m and inner exponent.
void k_node_fill(KBoundNode& node, const BigUint& q, const BigUint& big_n, uint64_t actions,
                 uint64_t p_count, size_t max_bits) {
    if (node.pool == 0) {
        node.ramsey_m = BigUint(1);
        node.inner = bv(BigUint(0));
        node.second = bv(BigUint(0));
        node.ramsey = bv(BigUint(0));
        node.value = bv(BigUint(0));
        return;
    }
    node.ramsey_m = *BigUint::pow(BigUint(2), BigUint(popcount(node.pool)), 64);
    node.inner = bv_pow(BigUint(actions), node.max_sub, max_bits);
    BoundValue two_a = bv_pow(BigUint(2), bv(BigUint(actions)), max_bits);
    BoundValue qp = bv_pow(q, bv(BigUint(p_count)), max_bits);
    BoundValue tower = bv_pow(BigUint(2), node.inner, max_bits);
    node.second =
        bv_mul(bv_mul(bv_mul(bv_mul(bv(big_n), two_a, max_bits), bv(BigUint(actions)), max_bits),
                      qp, max_bits),
               tower, max_bits);
    BoundValue m_second = bv_mul(bv(node.ramsey_m), node.second, max_bits);
    node.ramsey = bv_pow(node.ramsey_m, m_second, max_bits);
    node.value = bv_mul(bv(q), node.ramsey, max_bits);
}

std::vector<ProcessSet> subpools_of(ProcessSet pool) {
    std::vector<ProcessSet> subs;
    ProcessSet sub = 0;
    while (true) {
        subs.push_back(sub);
        if (sub == pool) break;
        sub = (sub - pool) & pool;
    }
    std::sort(subs.begin(), subs.end(), [](ProcessSet a, ProcessSet b) {
        if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
        return a < b;
    });
    return subs;
}

} // namespace

SPBoundReport bound_series_parallel(const SPTree& tree, const Game& g, size_t max_bits) {
    SPBoundReport rep;
    rep.global_states = global_states_big(g);
    rep.process_count = g.processes.size();
    rep.max_bits = max_bits;
    rep.total = sp_eval(tree, rep.global_states, rep.process_count, max_bits, rep.nodes);
    return rep;
}

KBoundReport bound_K(const Game& g, ProcessSet pool, uint64_t n_param, size_t max_bits) {
    if (n_param < 1) throw Error("the broadcast parameter N must be at least 1");
    if ((pool & ~g.alphabet->all_processes()) != 0)
        throw UnknownProcess("pool names an unknown process");
    KBoundReport rep;
    rep.big_n = BigUint(n_param);
    rep.global_states = global_states_big(g);
    rep.process_count = g.processes.size();
    rep.action_count = g.alphabet->letter_count();
    rep.max_bits = max_bits;

    std::map<ProcessSet, BoundValue> memo;
    for (ProcessSet s : subpools_of(pool)) {
        KBoundNode node;
        node.pool = s;
        node.max_sub = bv(BigUint(0));
        for (const auto& [t, v] : memo)
            if (t != s && (t & ~s) == 0) node.max_sub = bv_max(node.max_sub, v);
        k_node_fill(node, rep.global_states, rep.big_n, rep.action_count, rep.process_count,
                    max_bits);
        memo[s] = node.value;
        rep.nodes.push_back(std::move(node));
    }
    rep.total = memo.at(pool);
    return rep;
}

bool recompute_sp_report(const SPBoundReport& rep, const Game& g) {
    if (!(rep.global_states == global_states_big(g))) return false;
    if (rep.process_count != g.processes.size()) return false;
    if (rep.nodes.empty()) return false;
    // child values must match the recorded nodes for the child letter sets
    std::map<LetterSet, BoundValue> by_letters;
    for (const auto& node : rep.nodes) by_letters[node.letters] = node.value;
    for (const auto& node : rep.nodes) {
        if (node.kind != SPKind::leaf) {
            auto l = by_letters.find(node.left_letters);
            auto r = by_letters.find(node.right_letters);
            if (l == by_letters.end() || r == by_letters.end()) return false;
            if (!(l->second == node.left) || !(r->second == node.right)) return false;
        }
        if (!(sp_node_value(node, rep.global_states, rep.process_count, rep.max_bits) ==
              node.value))
            return false;
    }
    return rep.total == rep.nodes.back().value;
}

bool recompute_k_report(const KBoundReport& rep, const Game& g) {
    if (!(rep.global_states == global_states_big(g))) return false;
    if (rep.action_count != g.alphabet->letter_count()) return false;
    if (rep.process_count != g.processes.size()) return false;
    if (rep.nodes.empty()) return false;
    std::map<ProcessSet, BoundValue> memo;
    for (const auto& node : rep.nodes) {
        KBoundNode fresh;
        fresh.pool = node.pool;
        fresh.max_sub = bv(BigUint(0));
        for (const auto& [t, v] : memo)
            if (t != node.pool && (t & ~node.pool) == 0) fresh.max_sub = bv_max(fresh.max_sub, v);
        k_node_fill(fresh, rep.global_states, rep.big_n, rep.action_count, rep.process_count,
                    rep.max_bits);
        if (!(fresh.max_sub == node.max_sub) || !(fresh.ramsey_m == node.ramsey_m) ||
            !(fresh.inner == node.inner) || !(fresh.second == node.second) ||
            !(fresh.ramsey == node.ramsey) || !(fresh.value == node.value))
            return false;
        memo[node.pool] = fresh.value;
    }
    return rep.total == rep.nodes.back().value;
}

} // namespace zcs
