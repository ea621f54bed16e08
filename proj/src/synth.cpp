#include "zcs/synth.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

namespace zcs {

namespace {

using ViewKey = std::pair<ProcessId, std::vector<LetterId>>;

std::vector<LetterSet> subsets_in_order(const Alphabet& alph, LetterSet mask) {
    std::vector<LetterId> members;
    for (LetterId a : alph.order())
        if (mask & letter_bit(a)) members.push_back(a);
    std::vector<LetterSet> subs;
    LetterSet sub = 0;
    while (true) {
        subs.push_back(sub);
        if (sub == mask) break;
        sub = (sub - mask) & mask;
    }
    // by size, then lexicographic on the rank-ordered member list
    auto rank_list = [&](LetterSet s) {
        std::vector<uint32_t> rs;
        for (LetterId a : members)
            if (s & letter_bit(a)) rs.push_back(alph.rank(a));
        return rs;
    };
    std::sort(subs.begin(), subs.end(), [&](LetterSet a, LetterSet b) {
        int pa = popcount(a), pb = popcount(b);
        if (pa != pb) return pa < pb;
        return rank_list(a) < rank_list(b);
    });
    return subs;
}

/**
 * Backtracking search with conflict-directed backjumping. The evaluation of
 * a partial assignment is a deterministic function of the slots it actually
 * reads, so a rejection rules out every completion that agrees on the read
 * slots; backtracking jumps straight to the deepest read frame.
 */
struct Search {
    const Game& g;
    const SynthesisConfig& cfg;
    std::map<ViewKey, std::pair<LetterSet, size_t>> assigned; // value, frame index
    std::chrono::steady_clock::time_point deadline;
    bool has_deadline = false;

    struct Outcome {
        enum Kind { winning, rejected, need } kind = winning;
        ViewKey pending;             // for need
        std::set<size_t> consulted;  // for rejected: frames the verdict read
    };

    void check_budget() const {
        if (has_deadline && std::chrono::steady_clock::now() > deadline)
            throw BudgetExceeded("synthesis time budget exceeded");
    }

    /**
     * Expands sigma-plays breadth-first under the partial assignment,
     * pausing at the first controllable decision with no assigned slot.
     *
     * A rejection carries the frames its doom genuinely depends on: the
     * reads that derived the doomed play plus the reads blocking (or, at the
     * cap, allowing) its extensions. Any completion agreeing on those slots
     * keeps the doomed play doomed, so backjumping over the other frames is
     * sound no matter how it reshuffles the rest of the play set.
     */
    Outcome evaluate() {
        check_budget();
        std::map<std::vector<LetterId>, std::set<size_t>> deps;
        std::set<std::vector<LetterId>> seen;
        std::vector<Play> level{initial_play(g)};
        seen.insert(level[0].trace.word());
        deps[level[0].trace.word()] = {};
        while (!level.empty()) {
            std::vector<Play> next;
            for (const auto& u : level) {
                const std::set<size_t>& u_deps = deps.at(u.trace.word());
                bool extendable = false;
                std::set<size_t> blockers;
                for (LetterId x = 0; x < g.alphabet->letter_count(); ++x) {
                    auto v = try_extend(g, u, x);
                    if (!v) continue;
                    bool allowed = true;
                    std::set<size_t> allow_reads;
                    if (g.controllable & letter_bit(x)) {
                        for (ProcessId p : g.dom_list[x]) {
                            Trace view = process_view(g, u.trace, p, cfg.semantics);
                            auto it = assigned.find({p, view.word()});
                            if (it == assigned.end()) {
                                Outcome out;
                                out.kind = Outcome::need;
                                out.pending = {p, view.word()};
                                return out;
                            }
                            if (!(it->second.first & letter_bit(x))) {
                                allowed = false;
                                blockers.insert(it->second.second);
                                break;
                            }
                            allow_reads.insert(it->second.second);
                        }
                    }
                    if (!allowed) continue;
                    extendable = true;
                    if (u.trace.size() >= cfg.cap) {
                        std::set<size_t> conflict = u_deps;
                        conflict.insert(allow_reads.begin(), allow_reads.end());
                        return {Outcome::rejected, {}, std::move(conflict)};
                    }
                    if (seen.insert(v->trace.word()).second) {
                        auto v_deps = u_deps;
                        v_deps.insert(allow_reads.begin(), allow_reads.end());
                        deps[v->trace.word()] = std::move(v_deps);
                        next.push_back(std::move(*v));
                    }
                }
                if (!extendable && !g.is_final(u.state)) {
                    std::set<size_t> conflict = u_deps;
                    conflict.insert(blockers.begin(), blockers.end());
                    return {Outcome::rejected, {}, std::move(conflict)};
                }
            }
            std::sort(next.begin(), next.end(),
                      [](const Play& a, const Play& b) { return a.trace < b.trace; });
            level = std::move(next);
        }
        Outcome out;
        out.kind = Outcome::winning;
        return out;
    }
};

} // namespace

std::optional<Strategy> synthesize(const Game& g, const SynthesisConfig& cfg) {
    Search search{g, cfg, {}, {}, false};
    if (cfg.budget_ms) {
        search.deadline =
            std::chrono::steady_clock::now() + std::chrono::milliseconds(cfg.budget_ms);
        search.has_deadline = true;
    }

    struct Frame {
        ViewKey key;
        std::vector<LetterSet> subsets;
        size_t index = 0;
        std::set<size_t> conf; // frames implicated in rejections below here
    };
    std::vector<Frame> frames;

    auto pop_above = [&](size_t j) {
        while (frames.size() > j + 1) {
            search.assigned.erase(frames.back().key);
            frames.pop_back();
        }
    };

    while (true) {
        auto out = search.evaluate();
        if (out.kind == Search::Outcome::winning) {
            Strategy s;
            s.semantics = cfg.semantics;
            s.defaults.assign(g.processes.size(), 0);
            for (const auto& [key, val] : search.assigned) s.decisions.emplace(key, val.first);
            return s;
        }
        if (out.kind == Search::Outcome::need) {
            LetterSet choices = g.controllable & g.alphabet->actions_of(out.pending.first);
            Frame f{out.pending, subsets_in_order(*g.alphabet, choices), 0, {}};
            search.assigned[f.key] = {f.subsets[0], frames.size()};
            frames.push_back(std::move(f));
            continue;
        }
        // rejected: jump to the deepest consulted frame
        std::set<size_t> conflict = std::move(out.consulted);
        for (;;) {
            if (conflict.empty()) return std::nullopt;
            size_t j = *conflict.rbegin();
            conflict.erase(j);
            frames[j].conf.insert(conflict.begin(), conflict.end());
            pop_above(j);
            if (++frames[j].index < frames[j].subsets.size()) {
                search.assigned[frames[j].key] = {frames[j].subsets[frames[j].index], j};
                break;
            }
            conflict = std::move(frames[j].conf);
            search.assigned.erase(frames[j].key);
            frames.pop_back();
        }
    }
}

Verdict certify(const Game& g, const Strategy& s, size_t cap) {
    return explore(g, s, cap).verdict;
}

} // namespace zcs
