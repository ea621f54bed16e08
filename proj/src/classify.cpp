#include "zcs/classify.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace zcs {

BroadcastCaps default_caps(const Game& g) {
    auto m = static_cast<size_t>(std::min<uint64_t>(g.global_state_count(), 4096));
    return {m, m * g.processes.size(), 3 * m};
}

namespace {

bool letters_connected(const Alphabet& alph, LetterSet set) {
    if (set == 0) return false;
    LetterId start = static_cast<LetterId>(__builtin_ctzll(set));
    LetterSet reached = letter_bit(start);
    bool grew = true;
    while (grew) {
        grew = false;
        for (LetterId a = 0; a < alph.letter_count(); ++a) {
            if (!(set & letter_bit(a)) || (reached & letter_bit(a))) continue;
            for (LetterId b = 0; b < alph.letter_count(); ++b) {
                if ((reached & letter_bit(b)) && alph.dependent(a, b)) {
                    reached |= letter_bit(a);
                    grew = true;
                    break;
                }
            }
        }
    }
    return reached == set;
}

ProcessSet letters_domain(const Alphabet& alph, LetterSet set) {
    ProcessSet dom = 0;
    for (LetterId a = 0; a < alph.letter_count(); ++a)
        if (set & letter_bit(a)) dom |= alph.domain(a);
    return dom;
}

} // namespace

bool check_process_ordering(const Game& g, const ProcessOrdering& ord) {
    if (ord.size() != g.processes.size())
        throw IncompleteOrder("ordering does not cover the game's processes");
    const Alphabet& alph = *g.alphabet;
    LetterSet all = alph.all_letters();
    for (LetterSet set = all; set != 0; set = (set - 1) & all) {
        if (!letters_connected(alph, set)) continue;
        if (!ord.maximum_of(letters_domain(alph, set))) return false;
    }
    return true;
}

bool is_well_ordered_broadcast(const Game& g, const Trace& u, ProcessSet pool,
                               const ProcessOrdering& ord, size_t witness_cap) {
    if (!is_prime(u)) throw NotPrime("well-ordered broadcast check needs a prime play");
    if (ord.closure(pool) != pool) return false;
    if (!is_broadcast(g, u, pool, witness_cap)) return false;
    if (pool == 0) return true;
    auto max = ord.maximum_of(pool);
    if (!max) return false;
    return (g.alphabet->domain(prime_last(u)) & process_bit(*max)) != 0;
}

std::optional<uint32_t> decide_broadcast_game(const Game& g, const ProcessOrdering& ord,
                                              const BroadcastCaps& caps) {
    if (!check_process_ordering(g, ord))
        throw InvalidOrdering("not a process ordering for this game");

    uint64_t m = g.global_state_count();
    // A failing split with hypothesis threshold t rules out every N <= t.
    uint64_t max_blocked = 0;

    auto plays = enumerate_plays(g, caps.u_cap + caps.v_cap);
    std::map<std::pair<std::vector<LetterId>, ProcessSet>, bool> wob_memo;
    auto well_ordered = [&](const Trace& t, ProcessSet pool) {
        auto key = std::make_pair(t.word(), pool);
        auto it = wob_memo.find(key);
        if (it != wob_memo.end()) return it->second;
        bool res = is_well_ordered_broadcast(g, t, pool, ord, caps.witness_cap);
        wob_memo.emplace(key, res);
        return res;
    };

    for (const auto& w : plays) {
        if (!is_prime(w.trace)) continue;
        for (const auto& x : trace_prefixes(w.trace)) {
            if (x.size() > caps.u_cap) continue;
            Trace v = *prefix_residual(x, w.trace);
            if (v.size() > caps.v_cap) continue;
            uint64_t threshold = UINT64_MAX; // min over q in dom(v) of |v|_q
            for (ProcessId q = 0; q < g.processes.size(); ++q)
                if (v.domain() & process_bit(q))
                    threshold = std::min<uint64_t>(threshold, v.count_for(q));
            if (threshold <= max_blocked) continue; // cannot raise the requirement
            ProcessSet pool = ord.closure(v.domain());
            bool found = false;
            for (const auto& vp : trace_prefixes(v)) {
                Trace uvp = concat(x, vp);
                if (!is_prime(uvp)) continue;
                if (well_ordered(uvp, pool)) {
                    found = true;
                    break;
                }
            }
            if (!found) max_blocked = std::max(max_blocked, threshold);
        }
    }
    if (max_blocked >= m) return std::nullopt;
    return static_cast<uint32_t>(max_blocked + 1);
}

namespace {

std::unique_ptr<SPTree> sp_leaf(LetterId a) {
    auto t = std::make_unique<SPTree>();
    t->kind = SPKind::leaf;
    t->letters = letter_bit(a);
    t->letter = a;
    return t;
}

std::unique_ptr<SPTree> sp_node(SPKind kind, std::unique_ptr<SPTree> l,
                                std::unique_ptr<SPTree> r) {
    auto t = std::make_unique<SPTree>();
    t->kind = kind;
    t->letters = l->letters | r->letters;
    t->left = std::move(l);
    t->right = std::move(r);
    return t;
}

// connected components of the dependence graph restricted to `set`,
// ordered by their least-ranked letter
std::vector<LetterSet> dep_components(const Alphabet& alph, LetterSet set, bool complement) {
    std::vector<LetterSet> comps;
    LetterSet left = set;
    while (left) {
        LetterId seed = static_cast<LetterId>(__builtin_ctzll(left));
        LetterSet comp = letter_bit(seed);
        bool grew = true;
        while (grew) {
            grew = false;
            for (LetterId a = 0; a < alph.letter_count(); ++a) {
                if (!(left & letter_bit(a)) || (comp & letter_bit(a))) continue;
                for (LetterId b = 0; b < alph.letter_count(); ++b) {
                    if (!(comp & letter_bit(b))) continue;
                    bool edge = a != b && (complement ? alph.independent(a, b)
                                                      : alph.dependent(a, b));
                    if (edge) {
                        comp |= letter_bit(a);
                        grew = true;
                        break;
                    }
                }
            }
        }
        comps.push_back(comp);
        left &= ~comp;
    }
    std::sort(comps.begin(), comps.end(), [&](LetterSet a, LetterSet b) {
        auto least_rank = [&](LetterSet s) {
            uint32_t best = UINT32_MAX;
            for (LetterId x = 0; x < alph.letter_count(); ++x)
                if (s & letter_bit(x)) best = std::min(best, alph.rank(x));
            return best;
        };
        return least_rank(a) < least_rank(b);
    });
    return comps;
}

std::unique_ptr<SPTree> sp_rec(const Alphabet& alph, LetterSet set) {
    if (popcount(set) == 1) return sp_leaf(static_cast<LetterId>(__builtin_ctzll(set)));
    auto comps = dep_components(alph, set, false);
    SPKind kind = SPKind::par;
    if (comps.size() == 1) {
        comps = dep_components(alph, set, true);
        kind = SPKind::sync;
        if (comps.size() == 1) return nullptr; // neither splits: not a cograph
    }
    std::unique_ptr<SPTree> acc;
    for (const auto& comp : comps) {
        auto sub = sp_rec(alph, comp);
        if (!sub) return nullptr;
        acc = acc ? sp_node(kind, std::move(acc), std::move(sub)) : std::move(sub);
    }
    return acc;
}

} // namespace

std::optional<SPTree> classify_series_parallel(const Alphabet& alph) {
    auto t = sp_rec(alph, alph.all_letters());
    if (!t) return std::nullopt;
    return std::move(*t);
}

std::string sp_to_string(const SPTree& t, const Alphabet& alph) {
    switch (t.kind) {
        case SPKind::leaf: return alph.letter_name(t.letter);
        case SPKind::par:
            return "par(" + sp_to_string(*t.left, alph) + "," + sp_to_string(*t.right, alph) + ")";
        default:
            return "sync(" + sp_to_string(*t.left, alph) + "," + sp_to_string(*t.right, alph) + ")";
    }
}

bool dependence_p4_free(const Alphabet& alph) {
    size_t n = alph.letter_count();
    for (LetterId w = 0; w < n; ++w)
        for (LetterId x = 0; x < n; ++x)
            for (LetterId y = 0; y < n; ++y)
                for (LetterId z = 0; z < n; ++z) {
                    if (w == x || w == y || w == z || x == y || x == z || y == z) continue;
                    bool path = alph.dependent(w, x) && alph.dependent(x, y) &&
                                alph.dependent(y, z) && !alph.dependent(w, y) &&
                                !alph.dependent(w, z) && !alph.dependent(x, z);
                    if (path) return false;
                }
    return true;
}

std::optional<KCommViolation> check_k_communicating(const Game& g, uint32_t k, size_t cap) {
    auto plays = enumerate_plays(g, cap);
    // least split first: length before trace order, on every component
    auto shortlex = [](const Trace& a, const Trace& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    };
    std::sort(plays.begin(), plays.end(),
              [&](const Play& a, const Play& b) { return shortlex(a.trace, b.trace); });
    for (const auto& t : plays) {
        auto prefs = trace_prefixes(t.trace);
        std::sort(prefs.begin(), prefs.end(), shortlex);
        for (const auto& u : prefs) {
            Trace rest = *prefix_residual(u, t.trace);
            auto rest_prefs = trace_prefixes(rest);
            std::sort(rest_prefs.begin(), rest_prefs.end(), shortlex);
            for (const auto& v : rest_prefs) {
                Trace w = *prefix_residual(v, rest);
                if (!is_prime(w)) continue;
                for (ProcessId p = 0; p < g.processes.size(); ++p) {
                    if (v.count_for(p) < k) continue;
                    for (ProcessId q = 0; q < g.processes.size(); ++q) {
                        if (q == p || v.count_for(q) != 0) continue;
                        if (w.count_for(p) != 0 && w.count_for(q) != 0)
                            return KCommViolation{u, v, w, p, q};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

bool check_dag_condition(const Game& g, const ProcessOrdering& ord) {
    if (ord.size() != g.processes.size())
        throw IncompleteOrder("ordering does not cover the game's processes");
    for (LetterId a = 0; a < g.alphabet->letter_count(); ++a) {
        ProcessSet dom = g.alphabet->domain(a);
        for (ProcessId p0 = 0; p0 < g.processes.size(); ++p0) {
            if (!(dom & process_bit(p0))) continue;
            for (ProcessId p1 = 0; p1 < g.processes.size(); ++p1) {
                if (!(dom & process_bit(p1))) continue;
                for (ProcessId p2 = 0; p2 < g.processes.size(); ++p2) {
                    if (!ord.le(p0, p2)) continue;
                    if (!ord.le(p1, p2) && !(dom & process_bit(p2))) return false;
                }
            }
        }
    }
    return true;
}

std::vector<std::pair<ProcessId, ProcessId>> communication_graph(const Game& g) {
    std::vector<std::pair<ProcessId, ProcessId>> edges;
    for (ProcessId p = 0; p < g.processes.size(); ++p)
        for (ProcessId q = p + 1; q < g.processes.size(); ++q)
            for (LetterId a = 0; a < g.alphabet->letter_count(); ++a) {
                ProcessSet dom = g.alphabet->domain(a);
                if ((dom & process_bit(p)) && (dom & process_bit(q))) {
                    edges.emplace_back(p, q);
                    break;
                }
            }
    return edges;
}

namespace {

// lengths of all simple cycles, each found from its least vertex
void cycle_lengths(const std::vector<ProcessSet>& adj, std::vector<size_t>& out) {
    size_t n = adj.size();
    std::vector<ProcessId> path;
    std::vector<bool> on_path(n, false);
    std::function<void(ProcessId, ProcessId)> dfs = [&](ProcessId start, ProcessId cur) {
        for (ProcessId next = 0; next < n; ++next) {
            if (!(adj[cur] & process_bit(next))) continue;
            if (next == start && path.size() >= 3) {
                // canonical orientation: second vertex smaller than last
                if (path[1] < path.back()) out.push_back(path.size());
                continue;
            }
            if (next <= start || on_path[next]) continue;
            on_path[next] = true;
            path.push_back(next);
            dfs(start, next);
            path.pop_back();
            on_path[next] = false;
        }
    };
    for (ProcessId start = 0; start < n; ++start) {
        path = {start};
        on_path.assign(n, false);
        on_path[start] = true;
        dfs(start, start);
    }
}

} // namespace

bool check_triangulated(const Game& g,
                        const std::vector<std::pair<ProcessId, ProcessId>>& edges) {
    size_t n = g.processes.size();
    std::vector<ProcessSet> adj(n, 0);
    for (auto [p, q] : edges) {
        if (p >= n || q >= n) throw UnknownProcess("edge names an unknown process");
        if (p == q) continue;
        adj[p] |= process_bit(q);
        adj[q] |= process_bit(p);
    }
    std::vector<size_t> cycles;
    cycle_lengths(adj, cycles);
    for (size_t len : cycles)
        if (len != 3) return false;
    // every action domain connected in the graph
    for (LetterId a = 0; a < g.alphabet->letter_count(); ++a) {
        ProcessSet dom = g.alphabet->domain(a);
        ProcessId seed = static_cast<ProcessId>(__builtin_ctzll(dom));
        ProcessSet reached = process_bit(seed);
        bool grew = true;
        while (grew) {
            grew = false;
            for (ProcessId p = 0; p < n; ++p) {
                if (!(dom & process_bit(p)) || (reached & process_bit(p))) continue;
                if (adj[p] & reached) {
                    reached |= process_bit(p);
                    grew = true;
                }
            }
        }
        if (reached != dom) return false;
    }
    return true;
}

} // namespace zcs
