#include "zcs/shortcut.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace zcs {

namespace {

// All plays u·z with 0 < |z| <= v_cap, as (z, play) pairs sorted by z.
std::vector<std::pair<Trace, Play>> play_extensions(const Game& g, const Play& u, size_t v_cap) {
    std::vector<std::pair<Trace, Play>> out;
    std::set<std::vector<LetterId>> seen{u.trace.word()};
    std::vector<std::pair<Trace, Play>> level{{Trace(g.alphabet), u}};
    for (size_t len = 0; len < v_cap && !level.empty(); ++len) {
        std::vector<std::pair<Trace, Play>> next;
        for (const auto& [z, play] : level) {
            for (LetterId a = 0; a < g.alphabet->letter_count(); ++a) {
                auto v = try_extend(g, play, a);
                if (!v) continue;
                if (!seen.insert(v->trace.word()).second) continue;
                next.emplace_back(append(z, a), std::move(*v));
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        level = std::move(next);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

Play require_play(const Game& g, const Trace& u) {
    auto p = make_play(g, u);
    if (!p) throw Error("trace '" + u.str() + "' is not a play");
    return *p;
}

} // namespace

std::optional<Trace> broadcast_violation(const Game& g, const Trace& u, ProcessSet pool,
                                         size_t v_cap) {
    if (!is_prime(u)) throw NotPrime("broadcast check needs a prime play");
    Play base = require_play(g, u);
    ProcessSet outside = g.alphabet->all_processes() & ~pool;
    if (pool == 0 || outside == 0) return std::nullopt; // one side of the boundary is empty
    for (const auto& [z, play] : play_extensions(g, base, v_cap)) {
        if (!is_prime(z)) continue;
        bool uz_prime = is_prime(play.trace);
        bool z_indep_pool = (z.domain() & pool) == 0;
        bool z_inside = (z.domain() & outside) == 0;
        if (!uz_prime && !z_indep_pool && !z_inside) return z;
    }
    return std::nullopt;
}

bool is_broadcast(const Game& g, const Trace& u, ProcessSet pool, size_t v_cap) {
    return !broadcast_violation(g, u, pool, v_cap).has_value();
}

bool is_broadcast_def(const Game& g, const Trace& u, ProcessSet pool, size_t v_cap) {
    if (!is_prime(u)) throw NotPrime("broadcast check needs a prime play");
    Play base = require_play(g, u);
    ProcessSet outside = g.alphabet->all_processes() & ~pool;
    auto exts = play_extensions(g, base, v_cap);
    exts.emplace_back(Trace(g.alphabet), base); // z = empty
    for (const auto& [z, play] : exts) {
        LetterSet maxs = maximal_letters(play.trace);
        for (LetterId a = 0; a < g.alphabet->letter_count(); ++a) {
            if (!(maxs & letter_bit(a))) continue;
            ProcessSet dom = g.alphabet->domain(a);
            if ((dom & pool) == 0 || (dom & outside) == 0) continue;
            if (!is_prefix(u, view_of(play.trace, letter_bit(a), ViewSemantics::literal)))
                return false;
        }
    }
    return true;
}

Trace shortcut_map(const Trace& x, const Trace& y, const Trace& u) {
    auto v = prefix_residual(x, u);
    if (!v) return u;
    return concat(concat(x, y), *v);
}

namespace {

struct CertSearch {
    const Game& g;
    const Strategy& s;
    size_t broadcast_cap;
    size_t cond8_cap;
    std::map<std::pair<std::vector<LetterId>, ProcessSet>, bool> broadcast_memo;
    std::map<std::vector<LetterId>, std::vector<LetterSet>> decision_memo;

    bool broadcast(const Trace& u, ProcessSet pool) {
        auto key = std::make_pair(u.word(), pool);
        auto it = broadcast_memo.find(key);
        if (it != broadcast_memo.end()) return it->second;
        bool res = is_broadcast(g, u, pool, broadcast_cap);
        broadcast_memo.emplace(key, res);
        return res;
    }

    const std::vector<LetterSet>& decisions_at(const Trace& u) {
        auto it = decision_memo.find(u.word());
        if (it != decision_memo.end()) return it->second;
        std::vector<LetterSet> row;
        row.reserve(g.processes.size());
        for (ProcessId p = 0; p < g.processes.size(); ++p) row.push_back(decision(g, s, p, u));
        return decision_memo.emplace(u.word(), std::move(row)).first->second;
    }

    // condition on residual decisions: for every play xv with dom(v) in the
    // pool and v independent of the anchor, decisions after xv and xyv agree
    // for every process.
    bool decisions_coincide(const Trace& x, const Trace& xy, ProcessSet pool, LetterId anchor) {
        LetterSet allowed_letters = 0;
        for (LetterId z = 0; z < g.alphabet->letter_count(); ++z)
            if ((g.alphabet->domain(z) & ~pool) == 0 && g.alphabet->independent(z, anchor))
                allowed_letters |= letter_bit(z);
        Play base = require_play(g, x);
        std::set<std::vector<LetterId>> seen{Trace(g.alphabet).word()};
        std::vector<std::pair<Trace, Play>> level{{Trace(g.alphabet), base}};
        while (!level.empty()) {
            std::vector<std::pair<Trace, Play>> next;
            for (const auto& [v, play] : level) {
                Trace xyv = concat(xy, v);
                if (decisions_at(play.trace) != decisions_at(xyv)) return false;
                if (v.size() >= cond8_cap) continue;
                for (LetterId a = 0; a < g.alphabet->letter_count(); ++a) {
                    if (!(allowed_letters & letter_bit(a))) continue;
                    auto w = try_extend(g, play, a);
                    if (!w) continue;
                    auto v2 = append(v, a);
                    if (seen.insert(v2.word()).second) next.emplace_back(std::move(v2), std::move(*w));
                }
            }
            level = std::move(next);
        }
        return true;
    }
};

std::vector<ProcessSet> candidate_pools(const Game& g, ProcessSet dom_y, bool all_pools) {
    std::vector<ProcessSet> pools;
    if (all_pools) {
        ProcessSet all = g.alphabet->all_processes();
        ProcessSet rest = all & ~dom_y;
        // supersets of dom(y), ascending as masks
        ProcessSet sub = 0;
        while (true) {
            pools.push_back(dom_y | sub);
            if (sub == rest) break;
            sub = (sub - rest) & rest;
        }
        std::sort(pools.begin(), pools.end());
    } else {
        pools.push_back(dom_y);
        pools.push_back(g.ordering().closure(dom_y));
        pools.push_back(g.alphabet->all_processes());
        std::sort(pools.begin(), pools.end());
        pools.erase(std::unique(pools.begin(), pools.end()), pools.end());
    }
    return pools;
}

} // namespace

std::vector<ThreadCertificate> find_useless_threads(const Game& g, const Strategy& s, size_t cap,
                                                    bool all_pools) {
    auto ex = explore(g, s, cap);
    if (ex.verdict.kind == Verdict::bound_exceeded)
        throw Error("sigma-play exploration exceeded the cap; raise it before searching threads");

    size_t bcast_cap = static_cast<size_t>(3 * std::min<uint64_t>(g.global_state_count(), 1u << 20));
    CertSearch search{g, s, bcast_cap, cap, {}, {}};

    struct PlayInfo {
        GlobalState state;
        bool prime;
        LetterId last;
    };
    std::map<std::vector<LetterId>, PlayInfo> info;
    for (const auto& u : ex.plays) {
        bool prime = is_prime(u.trace);
        info[u.trace.word()] = {u.state, prime, prime ? prime_last(u.trace) : 0};
    }

    std::vector<ThreadCertificate> out;
    for (const auto& w : ex.plays) {
        const PlayInfo& wi = info.at(w.trace.word());
        if (!wi.prime) continue;
        LetterId b = wi.last;
        for (const auto& x : trace_prefixes(w.trace)) {
            if (x.empty() || x.size() == w.trace.size()) continue;
            auto xs = info.find(x.word());
            if (xs == info.end()) continue;                                   // x must be a sigma-play
            if (!xs->second.prime || xs->second.last != b) continue;          // x and xy b-prime
            if (xs->second.state != w.state) continue;                        // states coincide
            Trace y = *prefix_residual(x, w.trace);
            for (ProcessSet pool : candidate_pools(g, y.domain(), all_pools)) {
                if (!search.broadcast(x, pool) || !search.broadcast(w.trace, pool)) continue;
                if (!search.decisions_coincide(x, w.trace, pool, b)) continue;
                out.push_back({x, y, pool, b, cap, bcast_cap, cap});
                break;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const ThreadCertificate& a, const ThreadCertificate& b) {
        if (auto c = a.x <=> b.x; c != 0) return c < 0;
        return a.y < b.y;
    });
    return out;
}

namespace {

void validate_certificate(const Game& g, const Strategy& s, const ThreadCertificate& c) {
    auto fail = [&](const std::string& why) {
        throw InvalidCertificate("certificate (x='" + c.x.str() + "', y='" + c.y.str() +
                                 "'): " + why);
    };
    if (c.y.empty()) fail("empty y");
    Trace xy = concat(c.x, c.y);
    if ((c.y.domain() & ~c.pool) != 0) fail("dom(y) escapes the pool");
    if (!is_sigma_play(g, s, xy)) fail("xy is not a sigma-play");
    if (!is_prime(c.x) || prime_last(c.x) != c.anchor) fail("x is not anchor-prime");
    if (!is_prime(xy) || prime_last(xy) != c.anchor) fail("xy is not anchor-prime");
    auto sx = run_trace(g, c.x);
    auto sxy = run_trace(g, xy);
    if (!sx || !sxy || *sx != *sxy) fail("states after x and xy differ");
    CertSearch search{g, s, c.broadcast_cap, c.cond8_cap, {}, {}};
    if (!search.broadcast(c.x, c.pool)) fail("x is not a pool broadcast");
    if (!search.broadcast(xy, c.pool)) fail("xy is not a pool broadcast");
    if (!search.decisions_coincide(c.x, xy, c.pool, c.anchor)) fail("residual decisions differ");
}

} // namespace

Strategy take_shortcut(const Game& g, const Strategy& s, const ThreadCertificate& c) {
    validate_certificate(g, s, c);
    Trace xy = concat(c.x, c.y);
    Strategy out;
    out.semantics = s.semantics;
    out.defaults = s.defaults;
    for (const auto& [key, val] : s.decisions) {
        Trace kt = Trace::normalize(g.alphabet, key.second);
        if (!is_prefix(c.x, kt)) out.decisions.emplace(key, val);
    }
    for (const auto& [key, val] : s.decisions) {
        Trace kt = Trace::normalize(g.alphabet, key.second);
        if (auto rest = prefix_residual(xy, kt)) {
            auto moved = concat(c.x, *rest);
            bool inserted =
                out.decisions.emplace(std::make_pair(key.first, moved.word()), val).second;
            if (!inserted)
                throw InvalidCertificate("shortcut rewrite collided at view '" + moved.str() + "'");
        }
    }
    return out;
}

std::pair<Strategy, std::vector<ReduceStep>> reduce(const Game& g, const Strategy& s, size_t cap,
                                                    bool all_pools) {
    auto ex = explore(g, s, cap);
    if (ex.verdict.kind != Verdict::winning)
        throw NotWinning(std::string("reduce needs a winning strategy, got ") +
                         std::string(Verdict::kind_name(ex.verdict.kind)));

    auto total_duration = [](const ExploreResult& res) {
        uint64_t d = 0;
        for (const auto& u : res.maximal) d += u.trace.size();
        return d;
    };
    Strategy cur = s;
    std::vector<ReduceStep> steps;
    uint64_t before = total_duration(ex);
    while (true) {
        auto certs = find_useless_threads(g, cur, cap, all_pools);
        if (certs.empty()) break;
        std::stable_sort(certs.begin(), certs.end(),
                         [](const ThreadCertificate& a, const ThreadCertificate& b) {
                             if (a.y.size() != b.y.size()) return a.y.size() > b.y.size();
                             if (auto c = a.x <=> b.x; c != 0) return c < 0;
                             return a.y < b.y;
                         });
        Strategy next = take_shortcut(g, cur, certs.front());
        auto nex = explore(g, next, cap);
        uint64_t after = total_duration(nex);
        if (nex.verdict.kind != Verdict::winning || after >= before)
            throw InvalidCertificate("shortcut failed re-verification");
        steps.push_back({certs.front(), before, after});
        cur = std::move(next);
        before = after;
    }
    return {cur, steps};
}

} // namespace zcs
