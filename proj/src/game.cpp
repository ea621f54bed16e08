#include "zcs/game.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace zcs {

std::optional<StateId> GameProcess::find_state(std::string_view s) const {
    for (StateId i = 0; i < states.size(); ++i)
        if (states[i] == s) return i;
    return std::nullopt;
}

GlobalState Game::initial_state() const {
    GlobalState s;
    s.reserve(processes.size());
    for (const auto& p : processes) s.push_back(p.initial);
    return s;
}

bool Game::is_final(const GlobalState& s) const {
    for (size_t p = 0; p < processes.size(); ++p)
        if (!processes[p].is_final[s[p]]) return false;
    return true;
}

uint64_t Game::global_state_count() const {
    uint64_t m = 1;
    for (const auto& p : processes) {
        m *= p.states.size();
        if (m > (uint64_t{1} << 32)) return uint64_t{1} << 32;
    }
    return m;
}

ProcessOrdering Game::ordering() const {
    if (order_pairs.empty()) return ProcessOrdering::total(processes.size());
    return ProcessOrdering::from_pairs(processes.size(), order_pairs);
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream iss(line);
    std::string t;
    while (iss >> t) toks.push_back(t);
    return toks;
}

struct RawAction {
    std::string name;
    std::vector<std::string> dom;
    bool ctrl = true;
    int line = 0;
};

struct RawTrans {
    std::string action;
    std::vector<std::pair<std::string, std::string>> pre, post;
    int line = 0;
};

} // namespace

Game parse_game(std::istream& in) {
    std::vector<GameProcess> procs;
    std::vector<RawAction> actions;
    std::vector<RawTrans> trans;
    std::vector<std::string> order_letters;
    std::vector<std::pair<std::string, std::string>> order_pairs;
    bool saw_action = false, saw_trans = false;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];

        if (kw == "alphabetorder") {
            if (!order_letters.empty())
                throw SyntaxError(line_no, "duplicate alphabetorder");
            order_letters.assign(toks.begin() + 1, toks.end());
        } else if (kw == "process") {
            if (saw_action || saw_trans)
                throw SyntaxError(line_no, "process declarations must precede actions");
            // process <id> states <s>... init <s> final <s>...
            size_t i = 1;
            if (i >= toks.size()) throw SyntaxError(line_no, "missing process id");
            GameProcess p;
            p.name = toks[i++];
            if (i >= toks.size() || toks[i] != "states")
                throw SyntaxError(line_no, "expected 'states'");
            ++i;
            while (i < toks.size() && toks[i] != "init") p.states.push_back(toks[i++]);
            if (p.states.empty()) throw SyntaxError(line_no, "process has no states");
            if (i >= toks.size() || toks[i] != "init")
                throw SyntaxError(line_no, "expected 'init'");
            ++i;
            if (i >= toks.size()) throw SyntaxError(line_no, "missing initial state");
            std::string init_name = toks[i++];
            if (i >= toks.size() || toks[i] != "final")
                throw SyntaxError(line_no, "expected 'final'");
            ++i;
            std::vector<std::string> finals(toks.begin() + static_cast<ptrdiff_t>(i), toks.end());
            std::set<std::string> uniq(p.states.begin(), p.states.end());
            if (uniq.size() != p.states.size())
                throw SemanticError("duplicate state in process '" + p.name + "'");
            auto init = p.find_state(init_name);
            if (!init) throw SemanticError("unknown initial state '" + init_name + "'");
            p.initial = *init;
            p.is_final.assign(p.states.size(), false);
            for (const auto& f : finals) {
                auto s = p.find_state(f);
                if (!s) throw SemanticError("unknown final state '" + f + "'");
                p.is_final[*s] = true;
            }
            for (const auto& q : procs)
                if (q.name == p.name)
                    throw SemanticError("duplicate process '" + p.name + "'");
            procs.push_back(std::move(p));
        } else if (kw == "action") {
            saw_action = true;
            if (saw_trans)
                throw SyntaxError(line_no, "action declarations must precede transitions");
            RawAction a;
            a.line = line_no;
            size_t i = 1;
            if (i >= toks.size()) throw SyntaxError(line_no, "missing action name");
            a.name = toks[i++];
            if (i >= toks.size() || toks[i] != "dom")
                throw SyntaxError(line_no, "expected 'dom'");
            ++i;
            while (i < toks.size() && toks[i] != "ctrl" && toks[i] != "env")
                a.dom.push_back(toks[i++]);
            if (i >= toks.size())
                throw SyntaxError(line_no, "expected 'ctrl' or 'env'");
            a.ctrl = toks[i] == "ctrl";
            if (i + 1 != toks.size())
                throw SyntaxError(line_no, "trailing tokens after controllability");
            actions.push_back(std::move(a));
        } else if (kw == "trans") {
            saw_trans = true;
            RawTrans t;
            t.line = line_no;
            size_t i = 1;
            if (i >= toks.size()) throw SyntaxError(line_no, "missing action name");
            t.action = toks[i++];
            auto parse_pair = [&](const std::string& tok) {
                auto colon = tok.find(':');
                if (colon == std::string::npos)
                    throw SyntaxError(line_no, "expected <pid>:<state>, got '" + tok + "'");
                return std::make_pair(tok.substr(0, colon), tok.substr(colon + 1));
            };
            bool after_arrow = false;
            for (; i < toks.size(); ++i) {
                if (toks[i] == "->") {
                    if (after_arrow) throw SyntaxError(line_no, "duplicate '->'");
                    after_arrow = true;
                    continue;
                }
                (after_arrow ? t.post : t.pre).push_back(parse_pair(toks[i]));
            }
            if (!after_arrow) throw SyntaxError(line_no, "missing '->'");
            trans.push_back(std::move(t));
        } else if (kw == "order") {
            // order <pid> <= <pid>
            if (toks.size() != 4 || toks[2] != "<=")
                throw SyntaxError(line_no, "expected 'order <pid> <= <pid>'");
            order_pairs.emplace_back(toks[1], toks[3]);
        } else {
            throw SyntaxError(line_no, "unknown declaration '" + kw + "'");
        }
    }

    if (procs.empty()) throw SemanticError("game declares no process");
    if (actions.empty()) throw SemanticError("game declares no action");

    std::vector<std::string> proc_names;
    for (const auto& p : procs) proc_names.push_back(p.name);

    Game g;
    std::vector<std::pair<std::string, ProcessSet>> letters;
    LetterSet ctrl = 0;
    for (const auto& a : actions) {
        ProcessSet dom = 0;
        for (const auto& pid : a.dom) {
            auto it = std::find(proc_names.begin(), proc_names.end(), pid);
            if (it == proc_names.end())
                throw SemanticError("action '" + a.name + "' names unknown process '" + pid + "'");
            dom |= process_bit(static_cast<ProcessId>(it - proc_names.begin()));
        }
        if (static_cast<size_t>(popcount(dom)) != a.dom.size())
            throw SemanticError("action '" + a.name + "' repeats a domain process");
        if (a.ctrl) ctrl |= letter_bit(static_cast<LetterId>(letters.size()));
        letters.emplace_back(a.name, dom);
    }
    g.alphabet = std::make_shared<Alphabet>(proc_names, letters, order_letters);
    g.processes = std::move(procs);
    g.controllable = ctrl;

    g.dom_list.resize(g.alphabet->letter_count());
    g.transitions.resize(g.alphabet->letter_count());
    for (LetterId a = 0; a < g.alphabet->letter_count(); ++a)
        for (ProcessId p = 0; p < g.processes.size(); ++p)
            if (g.alphabet->domain(a) & process_bit(p)) g.dom_list[a].push_back(p);

    for (const auto& t : trans) {
        auto a = g.alphabet->find_letter(t.action);
        if (!a) throw SemanticError("transition for unknown action '" + t.action + "'");
        auto tuple_of = [&](const std::vector<std::pair<std::string, std::string>>& given) {
            std::vector<std::optional<StateId>> slot(g.dom_list[*a].size());
            for (const auto& [pid, st] : given) {
                auto p = g.alphabet->find_process(pid);
                if (!p) throw SemanticError("transition names unknown process '" + pid + "'");
                auto at = std::find(g.dom_list[*a].begin(), g.dom_list[*a].end(), *p);
                if (at == g.dom_list[*a].end())
                    throw SemanticError("process '" + pid + "' is not in dom(" + t.action + ")");
                auto s = g.processes[*p].find_state(st);
                if (!s) throw SemanticError("unknown state '" + st + "' of process '" + pid + "'");
                auto idx = static_cast<size_t>(at - g.dom_list[*a].begin());
                if (slot[idx]) throw SemanticError("transition repeats process '" + pid + "'");
                slot[idx] = *s;
            }
            std::vector<StateId> out;
            for (size_t i = 0; i < slot.size(); ++i) {
                if (!slot[i])
                    throw SemanticError("transition for '" + t.action +
                                        "' does not cover all of dom");
                out.push_back(*slot[i]);
            }
            return out;
        };
        auto pre = tuple_of(t.pre);
        auto post = tuple_of(t.post);
        auto [it, inserted] = g.transitions[*a].emplace(pre, post);
        if (!inserted) {
            if (it->second != post)
                throw SemanticError("nondeterministic transitions for action '" + t.action + "'");
            throw SemanticError("duplicate transition for action '" + t.action + "'");
        }
    }

    for (const auto& [p, q] : order_pairs) {
        auto pi = g.alphabet->find_process(p);
        auto qi = g.alphabet->find_process(q);
        if (!pi || !qi) throw SemanticError("order names an unknown process");
        g.order_pairs.emplace_back(*pi, *qi);
    }
    g.ordering(); // validate antisymmetry eagerly
    return g;
}

Game parse_game_text(const std::string& text) {
    std::istringstream in(text);
    return parse_game(in);
}

Game load_game(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open game file '" + path + "'");
    return parse_game(in);
}

std::string serialize_game(const Game& g) {
    std::ostringstream out;
    out << "alphabetorder";
    for (LetterId a : g.alphabet->order()) out << ' ' << g.alphabet->letter_name(a);
    out << '\n';
    for (const auto& p : g.processes) {
        out << "process " << p.name << " states";
        for (const auto& s : p.states) out << ' ' << s;
        out << " init " << p.states[p.initial] << " final";
        for (StateId s = 0; s < p.states.size(); ++s)
            if (p.is_final[s]) out << ' ' << p.states[s];
        out << '\n';
    }
    for (LetterId a = 0; a < g.alphabet->letter_count(); ++a) {
        out << "action " << g.alphabet->letter_name(a) << " dom";
        for (ProcessId p : g.dom_list[a]) out << ' ' << g.processes[p].name;
        out << ((g.controllable & letter_bit(a)) ? " ctrl" : " env") << '\n';
    }
    for (LetterId a = 0; a < g.alphabet->letter_count(); ++a) {
        for (const auto& [pre, post] : g.transitions[a]) {
            out << "trans " << g.alphabet->letter_name(a);
            for (size_t i = 0; i < pre.size(); ++i) {
                ProcessId p = g.dom_list[a][i];
                out << ' ' << g.processes[p].name << ':' << g.processes[p].states[pre[i]];
            }
            out << " ->";
            for (size_t i = 0; i < post.size(); ++i) {
                ProcessId p = g.dom_list[a][i];
                out << ' ' << g.processes[p].name << ':' << g.processes[p].states[post[i]];
            }
            out << '\n';
        }
    }
    for (auto [p, q] : g.order_pairs)
        out << "order " << g.processes[p].name << " <= " << g.processes[q].name << '\n';
    return out.str();
}

Play initial_play(const Game& g) {
    return Play{Trace(g.alphabet), g.initial_state()};
}

std::optional<Play> try_extend(const Game& g, const Play& u, LetterId x) {
    if (x >= g.alphabet->letter_count())
        throw UnknownLetter("action id out of range");
    std::vector<StateId> pre;
    pre.reserve(g.dom_list[x].size());
    for (ProcessId p : g.dom_list[x]) pre.push_back(u.state[p]);
    auto it = g.transitions[x].find(pre);
    if (it == g.transitions[x].end()) return std::nullopt;
    Play out{append(u.trace, x), u.state};
    for (size_t i = 0; i < g.dom_list[x].size(); ++i)
        out.state[g.dom_list[x][i]] = it->second[i];
    return out;
}

Play extend_play(const Game& g, const Play& u, LetterId x) {
    auto v = try_extend(g, u, x);
    if (!v)
        throw NotEnabled("action '" + g.alphabet->letter_name(x) + "' is not enabled after '" +
                         u.trace.str() + "'");
    return *v;
}

std::optional<GlobalState> run_trace(const Game& g, const Trace& t) {
    GlobalState s = g.initial_state();
    for (LetterId x : t.word()) {
        std::vector<StateId> pre;
        for (ProcessId p : g.dom_list[x]) pre.push_back(s[p]);
        auto it = g.transitions[x].find(pre);
        if (it == g.transitions[x].end()) return std::nullopt;
        for (size_t i = 0; i < g.dom_list[x].size(); ++i)
            s[g.dom_list[x][i]] = it->second[i];
    }
    return s;
}

std::optional<Play> make_play(const Game& g, const Trace& t) {
    auto s = run_trace(g, t);
    if (!s) return std::nullopt;
    return Play{t, std::move(*s)};
}

std::vector<Play> enumerate_plays(const Game& g, size_t max_len) {
    std::vector<Play> out;
    std::set<std::vector<LetterId>> seen;
    std::vector<Play> level{initial_play(g)};
    seen.insert(level[0].trace.word());
    out.push_back(level[0]);
    for (size_t len = 0; len < max_len && !level.empty(); ++len) {
        std::vector<Play> next;
        for (const auto& u : level) {
            for (LetterId x = 0; x < g.alphabet->letter_count(); ++x) {
                auto v = try_extend(g, u, x);
                if (v && seen.insert(v->trace.word()).second) {
                    out.push_back(*v);
                    next.push_back(std::move(*v));
                }
            }
        }
        level = std::move(next);
    }
    std::sort(out.begin(), out.end(),
              [](const Play& a, const Play& b) { return a.trace < b.trace; });
    return out;
}

Trace process_view(const Game& g, const Trace& u, ProcessId p, ViewSemantics semantics) {
    if (p >= g.processes.size()) throw UnknownProcess("process id out of range");
    return view_of(u, g.alphabet->actions_of(p), semantics);
}

} // namespace zcs
