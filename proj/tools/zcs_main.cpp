#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "zcs/bounds.hpp"
#include "zcs/synth.hpp"

namespace {

using namespace zcs;

// exit codes: 0 positive, 1 negative, 2 input error, 3 bound exceeded
constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_input = 2;
constexpr int exit_bound = 3;

ProcessSet parse_pool(const Game& g, const std::string& text) {
    ProcessSet pool = 0;
    std::istringstream iss(text);
    std::string tok;
    while (iss >> tok) pool |= process_bit(g.alphabet->process(tok));
    return pool;
}

std::string pool_str(const Game& g, ProcessSet pool) {
    std::string out = "{";
    bool first = true;
    for (ProcessId p = 0; p < g.processes.size(); ++p) {
        if (!(pool & process_bit(p))) continue;
        if (!first) out += ',';
        out += g.processes[p].name;
        first = false;
    }
    return out + "}";
}

std::string letters_str(const Game& g, LetterSet set) {
    std::string out = "{";
    bool first = true;
    for (LetterId a : g.alphabet->order()) {
        if (!(set & letter_bit(a))) continue;
        if (!first) out += ',';
        out += g.alphabet->letter_name(a);
        first = false;
    }
    return out + "}";
}

void emit_strategy(const Strategy& s, const Game& g, const std::string& out_path) {
    std::string text = serialize_strategy(s, g);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot write '" + out_path + "'");
        out << text;
    }
}

int cmd_classify(const std::string& game_path, size_t ucap_flag, size_t vcap_flag,
                 size_t wcap_flag, uint32_t k, size_t kcap) {
    Game g = load_game(game_path);
    std::cout << "format 1\n";

    auto sp = classify_series_parallel(*g.alphabet);
    if (sp)
        std::cout << "series-parallel yes " << sp_to_string(*sp, *g.alphabet) << '\n';
    else
        std::cout << "series-parallel no\n";

    BroadcastCaps caps = default_caps(g);
    if (ucap_flag) caps.u_cap = ucap_flag;
    if (vcap_flag) caps.v_cap = vcap_flag;
    if (wcap_flag) caps.witness_cap = wcap_flag;
    ProcessOrdering ord = g.ordering();
    std::optional<uint32_t> n;
    bool ord_ok = check_process_ordering(g, ord);
    if (ord_ok) n = decide_broadcast_game(g, ord, caps);
    std::cout << "broadcast-game ";
    if (!ord_ok)
        std::cout << "invalid-ordering";
    else if (n)
        std::cout << "N=" << *n;
    else
        std::cout << "no";
    std::cout << " (caps u=" << caps.u_cap << ",v=" << caps.v_cap << ",w=" << caps.witness_cap
              << ")\n";

    std::cout << "dag " << (ord_ok && check_dag_condition(g, ord) ? "yes" : "no") << '\n';
    std::cout << "triangulated "
              << (check_triangulated(g, communication_graph(g)) ? "yes" : "no") << '\n';

    auto viol = check_k_communicating(g, k, kcap);
    std::cout << "k-communicating k=" << k << " cap=" << kcap;
    if (viol) {
        std::cout << " counterexample u=" << viol->u.str() << " v=" << viol->v.str()
                  << " w=" << viol->w.str() << " p=" << g.processes[viol->p].name
                  << " q=" << g.processes[viol->q].name << '\n';
    } else {
        std::cout << " holds-within-cap\n";
    }
    return n ? exit_ok : exit_negative;
}

int cmd_broadcast(const std::string& game_path, const std::string& play_text,
                  const std::string& pool_text, size_t vcap_flag) {
    Game g = load_game(game_path);
    Trace u = Trace::parse(g.alphabet, play_text);
    if (!run_trace(g, u)) throw Error("'" + u.str() + "' is not a play of the game");
    ProcessSet pool = parse_pool(g, pool_text);
    size_t vcap = vcap_flag ? vcap_flag : default_caps(g).witness_cap;
    auto witness = broadcast_violation(g, u, pool, vcap);
    std::cout << "format 1\n";
    if (witness) {
        std::cout << "broadcast no\nwitness v=" << witness->str() << '\n';
        return exit_negative;
    }
    std::cout << "broadcast yes\n";
    return exit_ok;
}

int cmd_check(const std::string& game_path, const std::string& strat_path, size_t cap) {
    Game g = load_game(game_path);
    Strategy s = load_strategy(strat_path, g);
    auto res = explore(g, s, cap);
    std::cout << "format 1\n";
    std::cout << "verdict " << Verdict::kind_name(res.verdict.kind) << '\n';
    if (res.verdict.witness) std::cout << "witness " << res.verdict.witness->str() << '\n';
    std::cout << "plays " << res.plays.size() << '\n';
    std::cout << "maximal " << res.maximal.size() << '\n';
    if (res.verdict.kind == Verdict::bound_exceeded) {
        std::cout << "duration unbounded\n";
        return exit_bound;
    }
    uint64_t dur = 0;
    for (const auto& u : res.maximal) dur += u.trace.size();
    std::cout << "duration " << dur << '\n';
    return res.verdict.kind == Verdict::winning ? exit_ok : exit_negative;
}

int cmd_reduce(const std::string& game_path, const std::string& strat_path, size_t cap,
               const std::string& out_path, bool all_pools) {
    Game g = load_game(game_path);
    Strategy s = load_strategy(strat_path, g);
    auto pre = explore(g, s, cap);
    if (pre.verdict.kind == Verdict::bound_exceeded) {
        std::cerr << "bound exceeded at cap " << cap << '\n';
        return exit_bound;
    }
    if (pre.verdict.kind == Verdict::losing) {
        std::cerr << "strategy is losing; witness " << pre.verdict.witness->str() << '\n';
        return exit_negative;
    }
    auto [reduced, steps] = reduce(g, s, cap, all_pools);
    std::cout << "format 1\n";
    for (size_t i = 0; i < steps.size(); ++i) {
        const auto& st = steps[i];
        std::cout << "step " << i + 1 << " x=" << st.cert.x.str() << " y=" << st.cert.y.str()
                  << " Q=" << pool_str(g, st.cert.pool) << " b="
                  << g.alphabet->letter_name(st.cert.anchor) << " dur " << st.dur_before << "->"
                  << st.dur_after << '\n';
    }
    std::cout << "steps " << steps.size() << '\n';
    std::cout << "duration " << *duration(g, reduced, cap) << '\n';
    emit_strategy(reduced, g, out_path);
    return exit_ok;
}

int cmd_synthesize(const std::string& game_path, size_t cap, const std::string& semantics,
                   const std::string& out_path, uint64_t budget_ms) {
    Game g = load_game(game_path);
    SynthesisConfig cfg;
    cfg.cap = cap;
    cfg.semantics = parse_semantics(semantics);
    cfg.budget_ms = budget_ms;
    auto s = synthesize(g, cfg);
    if (!s) {
        std::cout << "none within bound " << cap << '\n';
        return exit_negative;
    }
    emit_strategy(*s, g, out_path);
    return exit_ok;
}

int cmd_bounds(const std::string& game_path, const std::string& pool_text, uint64_t n_param,
               size_t max_bits) {
    Game g = load_game(game_path);
    std::cout << "format 1\n";
    std::cout << "states " << g.global_state_count() << '\n';
    std::cout << "processes " << g.processes.size() << '\n';
    std::cout << "actions " << g.alphabet->letter_count() << '\n';

    auto sp = classify_series_parallel(*g.alphabet);
    if (sp) {
        auto rep = bound_series_parallel(*sp, g, max_bits);
        std::cout << "series-parallel yes " << sp_to_string(*sp, *g.alphabet) << '\n';
        std::cout << "sp-bound " << rep.total.str() << '\n';
        for (const auto& node : rep.nodes) {
            std::cout << "sp-node letters=" << letters_str(g, node.letters) << " kind="
                      << (node.kind == SPKind::leaf ? "leaf"
                                                    : node.kind == SPKind::par ? "par" : "sync")
                      << " K=" << node.value.str();
            if (node.kind != SPKind::leaf)
                std::cout << " left=" << node.left.str() << " right=" << node.right.str();
            std::cout << '\n';
        }
    } else {
        std::cout << "series-parallel no\n";
    }

    ProcessSet pool =
        pool_text.empty() ? g.alphabet->all_processes() : parse_pool(g, pool_text);
    auto rep = bound_K(g, pool, n_param, max_bits);
    std::cout << "k-bound pool=" << pool_str(g, pool) << " N=" << n_param << " K="
              << rep.total.str() << '\n';
    for (const auto& node : rep.nodes) {
        std::cout << "k-node pool=" << pool_str(g, node.pool) << " m="
                  << node.ramsey_m.to_decimal() << " maxsub=" << node.max_sub.str()
                  << " inner=" << node.inner.str() << " n=" << node.second.str()
                  << " R=" << node.ramsey.str() << " K=" << node.value.str() << '\n';
    }
    return exit_ok;
}

int cmd_trace(const std::string& game_path, const std::string& op, const std::string& word,
              const std::string& u_text, const std::string& v_text, const std::string& letters,
              const std::string& semantics, const std::string& process, size_t cap) {
    Game g = load_game(game_path);
    auto need = [&](const std::string& value, const char* flag) -> const std::string& {
        if (value.empty()) throw Error(std::string("trace op needs --") + flag);
        return value;
    };
    auto letter_set = [&](const std::string& text) {
        LetterSet set = 0;
        std::istringstream iss(text);
        std::string tok;
        while (iss >> tok) set |= letter_bit(g.alphabet->letter(tok));
        return set;
    };
    if (op == "normalize") {
        std::cout << Trace::parse(g.alphabet, need(word, "word")).str() << '\n';
        return exit_ok;
    }
    Trace u = Trace::parse(g.alphabet, need(u_text, "u"));
    if (op == "concat") {
        std::cout << concat(u, Trace::parse(g.alphabet, need(v_text, "v"))).str() << '\n';
        return exit_ok;
    }
    if (op == "residual") {
        auto r = prefix_residual(u, Trace::parse(g.alphabet, need(v_text, "v")));
        if (!r) {
            std::cout << "none\n";
            return exit_negative;
        }
        std::cout << r->str() << '\n';
        return exit_ok;
    }
    if (op == "view") {
        std::cout << view_of(u, letter_set(need(letters, "letters")), parse_semantics(semantics))
                         .str()
                  << '\n';
        return exit_ok;
    }
    if (op == "prime") {
        bool res = letters.empty() ? is_prime(u) : is_prime_for(u, letter_set(letters));
        std::cout << (res ? "yes" : "no") << '\n';
        return res ? exit_ok : exit_negative;
    }
    if (op == "count") {
        std::cout << u.count_for(g.alphabet->process(need(process, "process"))) << '\n';
        return exit_ok;
    }
    if (op == "linearizations") {
        auto lins = linearizations(u, cap);
        std::vector<std::string> rows;
        for (const auto& lin : lins) {
            std::string row;
            for (size_t i = 0; i < lin.size(); ++i) {
                if (i) row += ' ';
                row += g.alphabet->letter_name(lin[i]);
            }
            rows.push_back(lin.empty() ? "-" : row);
        }
        std::sort(rows.begin(), rows.end());
        for (const auto& row : rows) std::cout << row << '\n';
        return exit_ok;
    }
    throw Error("unknown trace op '" + op + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"distributed control toolkit for Zielonka automata"};
    app.require_subcommand(1);

    std::string game_path, strat_path, out_path;
    std::string play_text, pool_text, word, u_text, v_text, letters, process, op;
    std::string semantics = "literal";
    size_t cap = 0, ucap = 0, vcap = 0, wcap = 0, kcap = 4, max_bits = 1 << 20;
    uint32_t k = 1;
    uint64_t n_param = 1, budget_ms = 0;
    bool all_pools = false;

    auto* classify = app.add_subcommand("classify", "game class report");
    classify->add_option("game", game_path)->required();
    classify->add_option("--ucap", ucap);
    classify->add_option("--vcap", vcap);
    classify->add_option("--wcap", wcap);
    classify->add_option("--k", k);
    classify->add_option("--kcap", kcap);

    auto* broadcast = app.add_subcommand("broadcast", "pool broadcast check for a prime play");
    broadcast->add_option("game", game_path)->required();
    broadcast->add_option("--play", play_text)->required();
    broadcast->add_option("--pool", pool_text)->required();
    broadcast->add_option("--vcap", vcap);

    auto* check = app.add_subcommand("check", "winning verdict for a strategy");
    check->add_option("game", game_path)->required();
    check->add_option("strategy", strat_path)->required();
    check->add_option("--cap", cap)->required();

    auto* reduce_cmd = app.add_subcommand("reduce", "shortcut reduction of a winning strategy");
    reduce_cmd->add_option("game", game_path)->required();
    reduce_cmd->add_option("strategy", strat_path)->required();
    reduce_cmd->add_option("--cap", cap)->required();
    reduce_cmd->add_option("--out", out_path);
    reduce_cmd->add_flag("--all-pools", all_pools);

    auto* synth = app.add_subcommand("synthesize", "bounded winning-strategy search");
    synth->add_option("game", game_path)->required();
    synth->add_option("--cap", cap)->required();
    synth->add_option("--semantics", semantics);
    synth->add_option("--out", out_path);
    synth->add_option("--budget-ms", budget_ms);

    auto* bounds = app.add_subcommand("bounds", "length bounds from the class machinery");
    bounds->add_option("game", game_path)->required();
    bounds->add_option("--pool", pool_text);
    bounds->add_option("--N", n_param);
    bounds->add_option("--max-bits", max_bits);

    auto* trace_cmd = app.add_subcommand("trace", "trace algebra access");
    trace_cmd->add_option("game", game_path)->required();
    trace_cmd->add_option("--op", op)->required();
    trace_cmd->add_option("--word", word);
    trace_cmd->add_option("--u", u_text);
    trace_cmd->add_option("--v", v_text);
    trace_cmd->add_option("--letters", letters);
    trace_cmd->add_option("--semantics", semantics);
    trace_cmd->add_option("--process", process);
    trace_cmd->add_option("--cap", cap);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? exit_input : exit_ok;
    }

    try {
        if (classify->parsed()) return cmd_classify(game_path, ucap, vcap, wcap, k, kcap);
        if (broadcast->parsed()) return cmd_broadcast(game_path, play_text, pool_text, vcap);
        if (check->parsed()) return cmd_check(game_path, strat_path, cap);
        if (reduce_cmd->parsed())
            return cmd_reduce(game_path, strat_path, cap, out_path, all_pools);
        if (synth->parsed())
            return cmd_synthesize(game_path, cap, semantics, out_path, budget_ms);
        if (bounds->parsed()) return cmd_bounds(game_path, pool_text, n_param, max_bits);
        if (trace_cmd->parsed())
            return cmd_trace(game_path, op, word, u_text, v_text, letters, semantics, process,
                             cap ? cap : 10);
    } catch (const zcs::BudgetExceeded& e) {
        std::cerr << e.what() << '\n';
        return exit_bound;
    } catch (const zcs::NotWinning& e) {
        std::cerr << e.what() << '\n';
        return exit_negative;
    } catch (const zcs::Error& e) {
        std::cerr << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}
