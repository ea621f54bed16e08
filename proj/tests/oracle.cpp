#include "oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "zcs/strategy.hpp"

namespace zcs::oracle {

std::set<Word> word_class(const Alphabet& alph, const Word& w) {
    std::set<Word> cls{w};
    std::deque<Word> todo{w};
    while (!todo.empty()) {
        Word cur = std::move(todo.front());
        todo.pop_front();
        for (size_t i = 0; i + 1 < cur.size(); ++i) {
            if (!alph.independent(cur[i], cur[i + 1])) continue;
            Word next = cur;
            std::swap(next[i], next[i + 1]);
            if (cls.insert(next).second) todo.push_back(next);
        }
    }
    return cls;
}

namespace {

bool rank_less(const Alphabet& alph, const Word& a, const Word& b) {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i)
        if (alph.rank(a[i]) != alph.rank(b[i])) return alph.rank(a[i]) < alph.rank(b[i]);
    return a.size() < b.size();
}

} // namespace

Word least_of_class(const Alphabet& alph, const Word& w) {
    auto cls = word_class(alph, w);
    Word best = *cls.begin();
    for (const auto& cand : cls)
        if (rank_less(alph, cand, best)) best = cand;
    return best;
}

bool same_class(const Alphabet& alph, const Word& a, const Word& b) {
    if (a.size() != b.size()) return false;
    return word_class(alph, a).count(b) != 0;
}

std::optional<Word> residual(const Alphabet& alph, const Word& u, const Word& v) {
    if (u.size() > v.size()) return std::nullopt;
    auto u_cls = word_class(alph, u);
    for (const auto& lin : word_class(alph, v)) {
        Word head(lin.begin(), lin.begin() + static_cast<ptrdiff_t>(u.size()));
        if (u_cls.count(head))
            return Word(lin.begin() + static_cast<ptrdiff_t>(u.size()), lin.end());
    }
    return std::nullopt;
}

bool is_prefix(const Alphabet& alph, const Word& u, const Word& v) {
    return residual(alph, u, v).has_value();
}

bool is_prime_for(const Alphabet& alph, const Word& u, LetterSet B) {
    if (u.empty()) return false;
    for (const auto& lin : word_class(alph, u))
        if (!(B & letter_bit(lin.back()))) return false;
    return true;
}

bool is_prime(const Alphabet& alph, const Word& u) {
    if (u.empty()) return false;
    std::optional<LetterId> last;
    for (const auto& lin : word_class(alph, u)) {
        if (last && *last != lin.back()) return false;
        last = lin.back();
    }
    return true;
}

Word view(const Alphabet& alph, const Word& u, LetterSet B, ViewSemantics semantics) {
    size_t best_len = u.size() + 1;
    Word best;
    for (const auto& lin : word_class(alph, u)) {
        for (size_t k = 0; k <= lin.size(); ++k) {
            bool ok = true;
            for (size_t i = k; i < lin.size() && ok; ++i) {
                if (semantics == ViewSemantics::literal)
                    ok = alph.independent_of(lin[i], B);
                else
                    ok = (letter_bit(lin[i]) & B) == 0;
            }
            if (ok && k < best_len) {
                best_len = k;
                best = Word(lin.begin(), lin.begin() + static_cast<ptrdiff_t>(k));
            }
            if (ok) break; // longer splits of this linearization are not shorter
        }
    }
    return least_of_class(alph, best);
}

std::set<Word> prefixes(const Alphabet& alph, const Word& u) {
    std::set<Word> out;
    for (const auto& lin : word_class(alph, u))
        for (size_t k = 0; k <= lin.size(); ++k)
            out.insert(least_of_class(
                alph, Word(lin.begin(), lin.begin() + static_cast<ptrdiff_t>(k))));
    return out;
}

namespace {

std::vector<uint32_t> dec_digits(const std::string& s) {
    std::vector<uint32_t> d;
    for (auto it = s.rbegin(); it != s.rend(); ++it) d.push_back(static_cast<uint32_t>(*it - '0'));
    while (d.size() > 1 && d.back() == 0) d.pop_back();
    return d;
}

std::string dec_render(std::vector<uint32_t> d) {
    while (d.size() > 1 && d.back() == 0) d.pop_back();
    std::string out;
    for (auto it = d.rbegin(); it != d.rend(); ++it) out += static_cast<char>('0' + *it);
    return out;
}

} // namespace

std::string dec_add(const std::string& a, const std::string& b) {
    auto x = dec_digits(a), y = dec_digits(b);
    std::vector<uint32_t> out(std::max(x.size(), y.size()) + 1, 0);
    for (size_t i = 0; i < out.size(); ++i) {
        uint32_t s = out[i];
        if (i < x.size()) s += x[i];
        if (i < y.size()) s += y[i];
        out[i] = s % 10;
        if (i + 1 < out.size()) out[i + 1] += s / 10;
    }
    return dec_render(out);
}

std::string dec_mul(const std::string& a, const std::string& b) {
    auto x = dec_digits(a), y = dec_digits(b);
    std::vector<uint32_t> out(x.size() + y.size() + 1, 0);
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j) {
            out[i + j] += x[i] * y[j];
            // keep cells small
            out[i + j + 1] += out[i + j] / 10;
            out[i + j] %= 10;
        }
    for (size_t i = 0; i + 1 < out.size(); ++i) {
        out[i + 1] += out[i] / 10;
        out[i] %= 10;
    }
    return dec_render(out);
}

std::string dec_pow(const std::string& base, uint64_t exp) {
    std::string acc = "1";
    for (uint64_t i = 0; i < exp; ++i) acc = dec_mul(acc, base);
    return acc;
}

namespace {

using ViewKey = std::pair<ProcessId, Word>;

struct BruteSearch {
    const Game& g;
    size_t cap;
    ViewSemantics semantics;
    uint64_t max_candidates;
    uint64_t candidates = 0;
    bool aborted = false;
    std::map<ViewKey, LetterSet> assigned;

    struct Eval {
        bool complete = false;
        bool winning = false;
        ViewKey pending;
    };

    // depth-first play expansion, letters in reverse order: a traversal
    // deliberately unlike the library's breadth-first one
    Eval evaluate() {
        std::set<Word> seen;
        std::vector<Play> stack{initial_play(g)};
        seen.insert(stack.back().trace.word());
        bool all_final = true;
        while (!stack.empty()) {
            Play u = std::move(stack.back());
            stack.pop_back();
            bool extendable = false;
            for (LetterId xi = g.alphabet->letter_count(); xi-- > 0;) {
                auto v = try_extend(g, u, xi);
                if (!v) continue;
                bool allowed = true;
                if (g.controllable & letter_bit(xi)) {
                    for (auto it = g.dom_list[xi].rbegin(); it != g.dom_list[xi].rend(); ++it) {
                        Trace view = process_view(g, u.trace, *it, semantics);
                        auto found = assigned.find({*it, view.word()});
                        if (found == assigned.end()) return {false, false, {*it, view.word()}};
                        if (!(found->second & letter_bit(xi))) {
                            allowed = false;
                            break;
                        }
                    }
                }
                if (!allowed) continue;
                extendable = true;
                if (u.trace.size() >= cap) return {true, false, {}}; // bound exceeded
                if (seen.insert(v->trace.word()).second) stack.push_back(std::move(*v));
            }
            if (!extendable && !g.is_final(u.state)) all_final = false;
        }
        return {true, all_final, {}};
    }

    bool enumerate() {
        if (aborted) return false;
        auto ev = evaluate();
        if (ev.complete) {
            if (++candidates > max_candidates) aborted = true;
            return ev.winning;
        }
        LetterSet choices = g.controllable & g.alphabet->actions_of(ev.pending.first);
        // all subsets, largest mask first
        std::vector<LetterSet> subs;
        LetterSet sub = 0;
        while (true) {
            subs.push_back(sub);
            if (sub == choices) break;
            sub = (sub - choices) & choices;
        }
        std::sort(subs.rbegin(), subs.rend());
        bool found = false;
        for (LetterSet s : subs) {
            assigned[ev.pending] = s;
            if (enumerate()) {
                found = true;
                break;
            }
            if (aborted) break;
        }
        assigned.erase(ev.pending);
        return found;
    }
};

} // namespace

BruteResult brute_force_synthesize(const Game& g, size_t cap, ViewSemantics semantics,
                                   uint64_t max_candidates) {
    BruteSearch search{g, cap, semantics, max_candidates, 0, false, {}};
    bool found = search.enumerate();
    return {found, search.candidates, search.aborted};
}

} // namespace zcs::oracle
