#include "zcs/strategy.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace zcs {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream iss(line);
    std::string t;
    while (iss >> t) toks.push_back(t);
    return toks;
}

LetterSet parse_action_list(const Game& g, const std::vector<std::string>& toks, size_t from,
                            int line_no) {
    LetterSet set = 0;
    for (size_t i = from; i < toks.size(); ++i) {
        if (toks[i] == "-") {
            if (toks.size() - from != 1)
                throw SyntaxError(line_no, "'-' must stand alone in an action list");
            return 0;
        }
        auto a = g.alphabet->find_letter(toks[i]);
        if (!a) throw SemanticError("unknown action '" + toks[i] + "' in strategy");
        if (g.env_actions() & letter_bit(*a))
            throw SemanticError("environment action '" + toks[i] +
                                "' cannot appear in an allow list");
        set |= letter_bit(*a);
    }
    return set;
}

} // namespace

Strategy parse_strategy(std::istream& in, const Game& g) {
    Strategy s;
    s.defaults.assign(g.processes.size(), 0);
    bool have_semantics = false;
    std::set<ProcessId> defaults_seen;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        auto toks = tokens_of(line);
        if (toks.empty()) continue;

        if (toks[0] == "semantics") {
            if (have_semantics) throw SyntaxError(line_no, "duplicate semantics header");
            if (toks.size() != 2) throw SyntaxError(line_no, "expected 'semantics literal|causal'");
            s.semantics = parse_semantics(toks[1]);
            have_semantics = true;
            continue;
        }
        if (!have_semantics)
            throw SyntaxError(line_no, "strategy must start with a semantics header");

        if (toks[0] == "default") {
            if (toks.size() < 4 || toks[2] != "allow")
                throw SyntaxError(line_no, "expected 'default <pid> allow <actions|->'");
            auto p = g.alphabet->find_process(toks[1]);
            if (!p) throw SemanticError("unknown process '" + toks[1] + "' in strategy");
            if (!defaults_seen.insert(*p).second)
                throw SemanticError("duplicate default for process '" + toks[1] + "'");
            s.defaults[*p] = parse_action_list(g, toks, 3, line_no);
        } else if (toks[0] == "decide") {
            auto allow_at = std::find(toks.begin(), toks.end(), "allow");
            if (toks.size() < 4 || allow_at == toks.end() || allow_at - toks.begin() < 3)
                throw SyntaxError(line_no, "expected 'decide <pid> <view|-> allow <actions|->'");
            auto p = g.alphabet->find_process(toks[1]);
            if (!p) throw SemanticError("unknown process '" + toks[1] + "' in strategy");
            std::string view_text;
            for (auto it = toks.begin() + 2; it != allow_at; ++it) {
                if (!view_text.empty()) view_text += ' ';
                view_text += *it;
            }
            Trace view = Trace::parse(g.alphabet, view_text);
            if (!run_trace(g, view))
                throw SemanticError("recorded view '" + view.str() + "' is not a play");
            auto from = static_cast<size_t>(allow_at - toks.begin()) + 1;
            if (from >= toks.size()) throw SyntaxError(line_no, "missing action list");
            LetterSet allowed = parse_action_list(g, toks, from, line_no);
            auto key = std::make_pair(*p, view.word());
            if (!s.decisions.emplace(key, allowed).second)
                throw SemanticError("duplicate decision for process '" + toks[1] + "' at view '" +
                                    view.str() + "'");
        } else {
            throw SyntaxError(line_no, "unknown declaration '" + toks[0] + "'");
        }
    }
    if (!have_semantics) throw SemanticError("strategy file has no semantics header");
    return s;
}

Strategy parse_strategy_text(const std::string& text, const Game& g) {
    std::istringstream in(text);
    return parse_strategy(in, g);
}

Strategy load_strategy(const std::string& path, const Game& g) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open strategy file '" + path + "'");
    return parse_strategy(in, g);
}

std::string serialize_strategy(const Strategy& s, const Game& g) {
    std::ostringstream out;
    out << "semantics " << semantics_name(s.semantics) << '\n';
    auto put_actions = [&](LetterSet set) {
        if (!set) {
            out << " -";
            return;
        }
        for (LetterId a : g.alphabet->order())
            if (set & letter_bit(a)) out << ' ' << g.alphabet->letter_name(a);
    };
    for (ProcessId p = 0; p < g.processes.size(); ++p) {
        out << "default " << g.processes[p].name << " allow";
        put_actions(s.defaults[p]);
        out << '\n';
    }
    std::vector<std::pair<std::pair<ProcessId, Trace>, LetterSet>> rows;
    for (const auto& [key, set] : s.decisions)
        rows.push_back({{key.first, Trace::normalize(g.alphabet, key.second)}, set});
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.first.first != b.first.first) return a.first.first < b.first.first;
        return a.first.second < b.first.second;
    });
    for (const auto& [key, set] : rows) {
        out << "decide " << g.processes[key.first].name << ' ' << key.second.str() << " allow";
        put_actions(set);
        out << '\n';
    }
    return out.str();
}

LetterSet decision(const Game& g, const Strategy& s, ProcessId p, const Trace& u) {
    if (p >= g.processes.size()) throw UnknownProcess("process id out of range");
    Trace view = process_view(g, u, p, s.semantics);
    auto it = s.decisions.find({p, view.word()});
    LetterSet chosen = it != s.decisions.end() ? it->second : s.defaults[p];
    return chosen | g.env_actions();
}

bool action_allowed(const Game& g, const Strategy& s, const Trace& u, LetterId x) {
    for (ProcessId p : g.dom_list[x])
        if (!(decision(g, s, p, u) & letter_bit(x))) return false;
    return true;
}

namespace {

bool sigma_play_rec(const Game& g, const Strategy& s, const Trace& u,
                    std::map<std::vector<LetterId>, bool>& memo) {
    if (u.empty()) return true;
    auto it = memo.find(u.word());
    if (it != memo.end()) return it->second;
    bool ok = false;
    LetterSet maxs = maximal_letters(u);
    for (LetterId x = 0; x < u.alphabet()->letter_count() && !ok; ++x) {
        if (!(maxs & letter_bit(x))) continue;
        // remove the last (= maximal) occurrence of x
        std::vector<LetterId> w = u.word();
        for (size_t i = w.size(); i-- > 0;) {
            if (w[i] == x) {
                w.erase(w.begin() + static_cast<ptrdiff_t>(i));
                break;
            }
        }
        Trace prefix = Trace::normalize(u.alphabet(), w);
        if (sigma_play_rec(g, s, prefix, memo) && action_allowed(g, s, prefix, x)) ok = true;
    }
    memo[u.word()] = ok;
    return ok;
}

} // namespace

bool is_sigma_play(const Game& g, const Strategy& s, const Trace& u) {
    if (!run_trace(g, u)) return false;
    std::map<std::vector<LetterId>, bool> memo;
    return sigma_play_rec(g, s, u, memo);
}

std::string_view Verdict::kind_name(Kind k) {
    switch (k) {
        case winning: return "winning";
        case losing: return "losing";
        default: return "bound-exceeded";
    }
}

ExploreResult explore(const Game& g, const Strategy& s, size_t cap) {
    ExploreResult res;
    std::set<std::vector<LetterId>> seen;
    std::vector<Play> level{initial_play(g)};
    seen.insert(level[0].trace.word());

    std::optional<Trace> over_cap;   // least length-cap play with an extension
    std::optional<Trace> losing_w;   // least maximal play ending non-final

    auto note = [](std::optional<Trace>& slot, const Trace& t) {
        if (!slot || t < *slot) slot = t;
    };

    while (!level.empty()) {
        std::vector<Play> next;
        for (const auto& u : level) {
            res.plays.push_back(u);
            bool extendable = false;
            for (LetterId x = 0; x < g.alphabet->letter_count(); ++x) {
                auto v = try_extend(g, u, x);
                if (!v || !action_allowed(g, s, u.trace, x)) continue;
                extendable = true;
                if (u.trace.size() < cap && seen.insert(v->trace.word()).second)
                    next.push_back(std::move(*v));
            }
            if (!extendable) {
                res.maximal.push_back(u);
                if (!g.is_final(u.state)) note(losing_w, u.trace);
            } else if (u.trace.size() >= cap) {
                note(over_cap, u.trace);
            }
        }
        std::sort(next.begin(), next.end(),
                  [](const Play& a, const Play& b) { return a.trace < b.trace; });
        level = std::move(next);
    }

    std::sort(res.plays.begin(), res.plays.end(),
              [](const Play& a, const Play& b) { return a.trace < b.trace; });
    std::sort(res.maximal.begin(), res.maximal.end(),
              [](const Play& a, const Play& b) { return a.trace < b.trace; });

    if (over_cap) {
        res.verdict = {Verdict::bound_exceeded, std::move(over_cap)};
    } else if (losing_w) {
        res.verdict = {Verdict::losing, std::move(losing_w)};
    } else {
        res.verdict = {Verdict::winning, std::nullopt};
    }
    return res;
}

std::optional<uint64_t> duration(const Game& g, const Strategy& s, size_t cap) {
    auto res = explore(g, s, cap);
    if (res.verdict.kind == Verdict::bound_exceeded) return std::nullopt;
    uint64_t total = 0;
    for (const auto& u : res.maximal) total += u.trace.size();
    return total;
}

} // namespace zcs
