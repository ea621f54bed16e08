// Acceptance suite: one check block per criterion, one pass/fail line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "testutil.hpp"
#include "zcs/bounds.hpp"
#include "zcs/synth.hpp"

using namespace zcs;
using testutil::fixture_path;
using testutil::golden_path;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail; // first failure, or summary extras on success
    uint64_t checks = 0;

    void fail(const std::string& msg) {
        if (ok) detail = msg;
        ok = false;
    }
    void expect(bool cond, const std::string& msg) {
        ++checks;
        if (!cond) fail(msg);
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string run_cli_capture(const std::string& args, int& exit_code) {
    std::string cmd = std::string(ZCS_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        exit_code = -1;
        return {};
    }
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------- criterion 1

/**
 * The algebraic law suite over randomized instances. Every primitive
 * relation feeding a law (prefix, residual, primality, views) is recomputed
 * through the linearization-class oracle and must agree with the library.
 */
Outcome criterion_trace_laws(uint64_t instances) {
    Outcome out;
    auto t_start = std::chrono::steady_clock::now();
    testutil::Rng rng(160105);
    uint64_t four_way_hits = 0;

    for (uint64_t iter = 0; iter < instances && out.ok; ++iter) {
        auto alph = testutil::random_alphabet(rng, 5, 3);
        const Alphabet& A = *alph;
        auto norm = [&](const std::vector<LetterId>& w) { return Trace::normalize(alph, w); };

        Trace u = norm(testutil::random_word(rng, A, 4));
        Trace v = norm(testutil::random_word(rng, A, 2));
        Trace w = rng.chance(50) ? v : norm(testutil::random_word(rng, A, 2));
        LetterSet B = rng.next() & A.all_letters();
        LetterId a = static_cast<LetterId>(rng.below(A.letter_count()));

        // canonical form is the least linearization; the choice of class
        // member does not matter
        out.expect(u.word() == oracle::least_of_class(A, u.word()), "normal form not least");
        for (const auto& lin : linearizations(u, 10))
            out.expect(norm(lin) == u, "class member normalizes differently");

        // primitive agreement with the oracle
        Trace uv = concat(u, v);
        out.expect(is_prefix(u, uv) && oracle::is_prefix(A, u.word(), uv.word()),
                   "u is not a prefix of uv");
        out.expect(is_prime_for(u, B) == oracle::is_prime_for(A, u.word(), B),
                   "B-primality disagrees with the oracle");
        out.expect(is_prime(u) == oracle::is_prime(A, u.word()),
                   "primality disagrees with the oracle");
        out.expect(view_of(u, B).word() == oracle::view(A, u.word(), B, ViewSemantics::literal),
                   "literal view disagrees with the oracle");

        // prefix antisymmetry, made non-vacuous by reusing u
        {
            Trace vv = rng.chance(40) ? u : v;
            bool fwd = is_prefix(u, vv), bwd = is_prefix(vv, u);
            out.expect(fwd == oracle::is_prefix(A, u.word(), vv.word()),
                       "prefix disagrees with the oracle");
            if (fwd && bwd) out.expect(u == vv, "prefix antisymmetry broken");
        }

        // left cancellation: the residual of u in uv is exactly v
        {
            auto r = prefix_residual(u, uv);
            out.expect(r.has_value() && *r == v, "left cancellation broken");
            auto ro = oracle::residual(A, u.word(), uv.word());
            out.expect(ro.has_value() && oracle::least_of_class(A, *ro) == v.word(),
                       "oracle residual disagrees");
            if (concat(u, v) == concat(u, w)) out.expect(v == w, "cancellation broken");
        }

        // prefix cancellation
        if (is_prefix(uv, concat(u, w))) out.expect(is_prefix(v, w), "prefix cancellation broken");

        // independence characterization via the literal view
        out.expect(trace_independent_of(u, B) == view_of(u, B).empty(),
                   "independence vs empty view broken");

        // both decomposition laws for a random prefix of uv
        {
            auto all_x = trace_prefixes(uv);
            Trace x = all_x[rng.below(all_x.size())];
            bool plain = false, strong = false;
            for (const auto& x0 : trace_prefixes(u)) {
                auto x1 = prefix_residual(x0, x);
                if (!x1 || !is_prefix(*x1, v)) continue;
                plain = true;
                auto x2 = prefix_residual(x0, u);
                auto x3 = prefix_residual(*x1, v);
                if (x2 && x3 && traces_independent(*x2, *x1)) strong = true;
            }
            out.expect(plain, "no split x = x0 x1 with x0 <= u, x1 <= v");
            out.expect(strong, "no split with the middle parts independent");
        }

        // primality laws
        if (!v.empty() && is_prime_for(uv, B))
            out.expect(is_prime_for(v, B), "suffix of a B-prime trace not B-prime");
        if (is_prime_for(u, B) && is_prime_for(v, B))
            out.expect(is_prime_for(uv, B), "concatenation of B-primes not B-prime");
        {
            Trace ua = append(u, a);
            if (is_prime(ua)) {
                Trace av = concat(norm({a}), v);
                out.expect(is_prime_for(av, B) == is_prime_for(concat(u, av), B),
                           "prime-prefix extension law broken");
                Trace avw = concat(av, w);
                out.expect(is_prefix(concat(u, av), view_of(concat(u, avw), B)) ==
                               is_prefix(av, view_of(avw, B)),
                           "view-prefix transfer law broken");
            }
        }
        if (is_prime_for(u, B) && !u.empty() && !A.independent_of(a, u.letters()))
            out.expect(is_prime_for(concat(norm({a}), u), B),
                       "dependent-letter prefix law broken");

        // view laws
        out.expect(view_of(view_of(u, B), B) == view_of(u, B), "view not idempotent");
        out.expect(view_of(uv, B) == view_of(concat(u, view_of(v, B)), B),
                   "view concatenation law broken");
        out.expect(is_prefix(u, view_of(uv, B)) == (view_of(uv, B) == concat(u, view_of(v, B))),
                   "view split law broken");
        if (is_prefix(concat(u, w), view_of(uv, B)))
            out.expect(is_prefix(w, view_of(v, B)), "view prefix projection broken");

        // four-way equivalence for an a-prime u and prime v
        {
            Trace ua = append(u, a);
            if (is_prime(ua) && is_prime(v)) {
                ++four_way_hits;
                LetterId b = prime_last(v);
                Trace aw = norm({a});
                bool c1 = is_prime_for(concat(ua, v), letter_bit(b));
                bool c2 = !trace_independent_of(v, letter_bit(a));
                bool c3 = is_prefix(aw, view_of(concat(aw, v), letter_bit(b)));
                bool c4 = is_prefix(ua, view_of(concat(ua, v), letter_bit(b)));
                out.expect(c1 == c2 && c2 == c3 && c3 == c4,
                           "four-way prime/view equivalence broken");
            }
        }

        if (!out.ok)
            out.detail += " [iter " + std::to_string(iter) + ", u=" + u.str() + ", v=" + v.str() +
                          ", w=" + w.str() + "]";
    }
    if (four_way_hits < instances / 20)
        out.fail("four-way equivalence exercised only " + std::to_string(four_way_hits) +
                 " times");
    if (seconds_since(t_start) >= 60.0) out.fail("law suite exceeded its 60 second budget");
    if (out.ok) out.detail = std::to_string(instances) + " instances";
    return out;
}

// ---------------------------------------------------------------- criterion 2

Outcome criterion_view_discrepancy() {
    Outcome out;
    auto alph = testutil::t1_alphabet();
    LetterSet a2 = alph->actions_of(1); // the b and c actions
    Trace ab = Trace::parse(alph, "a b");
    // literal reading: the process-2 view of "a b" is the whole trace, not prime
    Trace lit = view_of(ab, a2, ViewSemantics::literal);
    out.expect(lit == ab, "literal view of 'a b' is not 'a b'");
    out.expect(!is_prime(lit), "literal view unexpectedly prime");
    // causal reading: the view is the b event alone, prime
    Trace cau = view_of(ab, a2, ViewSemantics::causal);
    out.expect(cau.str() == "b", "causal view of 'a b' is not 'b'");
    out.expect(is_prime(cau), "causal view not prime");
    return out;
}

// ---------------------------------------------------------------- criterion 3

Outcome criterion_broadcast_coherence() {
    Outcome out;
    uint64_t agreement_fails = 0, domain_fails = 0, full_fails = 0, complement_fails = 0,
             singleton_fails = 0;
    std::string first_singleton_fail;
    for (const auto& name : {"G1.zgame", "G2.zgame", "G3.zgame", "G4.zgame"}) {
        Game g = load_game(fixture_path(name));
        ProcessSet all = g.alphabet->all_processes();
        for (const auto& u : enumerate_plays(g, 4)) {
            if (!is_prime(u.trace)) continue;
            LetterId b = prime_last(u.trace);
            for (ProcessSet pool = 0; pool <= all; ++pool) {
                if ((pool & ~all) != 0) continue;
                for (size_t cap : {0u, 1u, 2u, 3u, 4u, 5u}) {
                    ++out.checks;
                    if (is_broadcast(g, u.trace, pool, cap) !=
                        is_broadcast_def(g, u.trace, pool, cap))
                        ++agreement_fails;
                }
                ++out.checks; // pool/complement symmetry
                if (is_broadcast(g, u.trace, pool, 5) !=
                    is_broadcast(g, u.trace, all & ~pool, 5))
                    ++complement_fails;
                if (popcount(pool) == 1) {
                    ++out.checks; // singleton claim, as stated
                    if (!is_broadcast(g, u.trace, pool, 5)) {
                        ++singleton_fails;
                        if (first_singleton_fail.empty())
                            first_singleton_fail =
                                std::string("refuted on ") + name + ": u='" + u.trace.str() +
                                "', pool={" +
                                g.processes[static_cast<ProcessId>(__builtin_ctzll(pool))].name +
                                "}, witness v='" +
                                broadcast_violation(g, u.trace, pool, 5)->str() + "'";
                    }
                }
            }
            ++out.checks; // the maximal action's domain always broadcasts
            if (!is_broadcast(g, u.trace, g.alphabet->domain(b), 5)) ++domain_fails;
            ++out.checks; // the full process set always broadcasts
            if (!is_broadcast(g, u.trace, all, 5)) ++full_fails;
        }
    }
    if (agreement_fails)
        out.fail(std::to_string(agreement_fails) + " formulation-agreement failures");
    if (domain_fails || full_fails || complement_fails)
        out.fail(std::to_string(domain_fails) + "/" + std::to_string(full_fails) + "/" +
                 std::to_string(complement_fails) +
                 " domain/full-set/complement broadcast-fact failures");
    if (singleton_fails)
        out.fail(std::to_string(singleton_fails) + " singleton-pool claim failures, first " +
                 first_singleton_fail +
                 " (other facts and both formulations agree everywhere)");
    return out;
}

// ---------------------------------------------------------------- criterion 4

struct StrategyCase {
    Game game;
    Strategy strategy;
    size_t cap;
    std::string label;
};

// Dawdling winning strategies on single-process chains and the two-process
// synchronization game: the dawdle loops are the injected redundancy.
std::vector<StrategyCase> shortcut_corpus() {
    std::vector<StrategyCase> cases;

    auto single = [&](size_t chain, size_t dawdle) {
        std::ostringstream g;
        g << "process 1 states";
        for (size_t i = 0; i <= chain; ++i) g << " q" << i;
        g << " init q0 final q" << chain << "\n";
        g << "action a dom 1 ctrl\naction t dom 1 ctrl\n";
        g << "trans a 1:q0 -> 1:q0\n";
        for (size_t i = 0; i < chain; ++i) g << "trans t 1:q" << i << " -> 1:q" << i + 1 << "\n";
        Game game = parse_game_text(g.str());

        Strategy s;
        s.semantics = ViewSemantics::literal;
        s.defaults.assign(1, 0);
        LetterId a = game.alphabet->letter("a"), t = game.alphabet->letter("t");
        std::vector<LetterId> view;
        for (size_t i = 0; i < dawdle; ++i) {
            s.decisions[{0, view}] = letter_bit(a);
            view.push_back(a);
        }
        for (size_t i = 0; i < chain; ++i) {
            s.decisions[{0, view}] = letter_bit(t);
            view.push_back(t);
        }
        cases.push_back({std::move(game), std::move(s), dawdle + chain + 4,
                         "chain" + std::to_string(chain) + "/dawdle" + std::to_string(dawdle)});
    };
    // a dawdle of at least three leaves two equal-decision loop views, the
    // least redundancy the thread conditions can certify
    for (size_t chain = 1; chain <= 3; ++chain)
        for (size_t dawdle = 3; dawdle <= 7; ++dawdle) single(chain, dawdle);

    auto two_proc = [&](size_t dawdle) {
        Game game = load_game(fixture_path("G1.zgame"));
        LetterId b = game.alphabet->letter("b"), c = game.alphabet->letter("c");
        Strategy s;
        s.semantics = ViewSemantics::literal;
        s.defaults.assign(2, 0);
        std::vector<LetterId> view;
        for (size_t i = 0; i < dawdle; ++i) {
            s.decisions[{0, view}] = 0;
            s.decisions[{1, view}] = letter_bit(b);
            view.push_back(b);
        }
        s.decisions[{0, view}] = letter_bit(c);
        s.decisions[{1, view}] = letter_bit(c);
        cases.push_back(
            {std::move(game), std::move(s), dawdle + 4, "sync/dawdle" + std::to_string(dawdle)});
    };
    for (size_t dawdle = 3; dawdle <= 12; ++dawdle) two_proc(dawdle);

    // a two-phase single-process shape so different anchors appear
    auto two_phase = [&](size_t k1, size_t k2) {
        std::ostringstream g;
        g << "process 1 states q0 q1 f init q0 final f\n";
        g << "action a dom 1 ctrl\naction b dom 1 ctrl\naction t dom 1 ctrl\n";
        g << "trans a 1:q0 -> 1:q0\ntrans b 1:q1 -> 1:q1\n";
        g << "trans t 1:q0 -> 1:q1\ntrans t 1:q1 -> 1:f\n";
        Game game = parse_game_text(g.str());
        LetterId a = game.alphabet->letter("a"), b = game.alphabet->letter("b"),
                 t = game.alphabet->letter("t");
        Strategy s;
        s.semantics = ViewSemantics::literal;
        s.defaults.assign(1, 0);
        std::vector<LetterId> view;
        for (size_t i = 0; i < k1; ++i) {
            s.decisions[{0, view}] = letter_bit(a);
            view.push_back(a);
        }
        s.decisions[{0, view}] = letter_bit(t);
        view.push_back(t);
        for (size_t i = 0; i < k2; ++i) {
            s.decisions[{0, view}] = letter_bit(b);
            view.push_back(b);
        }
        s.decisions[{0, view}] = letter_bit(t);
        cases.push_back({std::move(game), std::move(s), k1 + k2 + 6,
                         "twophase/" + std::to_string(k1) + "," + std::to_string(k2)});
    };
    for (size_t k1 = 0; k1 <= 6; ++k1)
        for (size_t k2 = 3; k2 <= 7; ++k2) two_phase(k1, k2);

    // longer single-process dawdles to pass one hundred
    for (size_t chain = 1; chain <= 2; ++chain)
        for (size_t dawdle = 8; dawdle <= 32; ++dawdle) single(chain, dawdle);

    return cases;
}

Outcome criterion_shortcut_suite() {
    Outcome out;
    auto cases = shortcut_corpus();
    if (cases.size() < 100)
        out.fail("only " + std::to_string(cases.size()) + " generated strategies");
    uint64_t certificates = 0;

    for (const auto& item : cases) {
        const Game& g = item.game;
        auto base = explore(g, item.strategy, item.cap);
        if (base.verdict.kind != Verdict::winning) {
            out.fail(item.label + ": base strategy not winning");
            break;
        }
        uint64_t dur_before = *duration(g, item.strategy, item.cap);
        auto certs = find_useless_threads(g, item.strategy, item.cap);
        if (certs.empty()) {
            out.fail(item.label + ": no certificate despite injected redundancy");
            break;
        }
        auto plays = enumerate_plays(g, item.cap);
        for (const auto& cert : certs) {
            ++certificates;
            Strategy tau = take_shortcut(g, item.strategy, cert);
            Trace xy = concat(cert.x, cert.y);

            // (a) still a distributed strategy: recorded views are plays and
            // the lookup realizes the composition with phi
            for (const auto& [key, val] : tau.decisions) {
                (void)val;
                out.expect(run_trace(g, Trace::normalize(g.alphabet, key.second)).has_value(),
                           item.label + ": rewritten view is not a play");
            }
            for (const auto& u : plays)
                for (ProcessId p = 0; p < g.processes.size(); ++p)
                    out.expect(
                        decision(g, tau, p, u.trace) ==
                            decision(g, item.strategy, p, shortcut_map(cert.x, cert.y, u.trace)),
                        item.label + ": decisions differ from the phi composition");

            // (b) winning again
            out.expect(explore(g, tau, item.cap).verdict.kind == Verdict::winning,
                       item.label + ": shortcut not winning");

            // (c) strictly shorter
            auto dur_after = duration(g, tau, item.cap);
            out.expect(dur_after && *dur_after < dur_before,
                       item.label + ": duration did not decrease");

            // (d) play correspondence
            for (const auto& u : plays) {
                Trace xv = concat(cert.x, u.trace);
                Trace xyv = concat(xy, u.trace);
                if (!run_trace(g, xv) || xv.size() > item.cap || xyv.size() > item.cap) continue;
                out.expect(is_sigma_play(g, tau, xv) == is_sigma_play(g, item.strategy, xyv),
                           item.label + ": play correspondence broken");
            }
            if (!out.ok) break;
        }
        if (!out.ok) break;
    }

    // the worked example reduces four to three exactly
    Game g3 = load_game(fixture_path("G3.zgame"));
    Strategy s6 = load_strategy(fixture_path("sigma6.zstrat"), g3);
    auto [reduced, steps] = reduce(g3, s6, 10);
    out.expect(steps.size() == 1 && steps[0].dur_before == 4 && steps[0].dur_after == 3,
               "dawdle example did not reduce 4 -> 3");
    out.expect(find_useless_threads(g3, reduced, 10).empty(), "reduced strategy not a fixpoint");

    if (out.ok)
        out.detail = std::to_string(cases.size()) + " strategies, " +
                     std::to_string(certificates) + " certificates";
    return out;
}

// ---------------------------------------------------------------- criterion 5

Outcome criterion_classification_goldens() {
    Outcome out;
    for (const auto& name : {"G1", "G4", "P4", "TRI"}) {
        int code = 0;
        std::string got =
            run_cli_capture("classify " + fixture_path(std::string(name) + ".zgame"), code);
        std::string want = slurp(golden_path(std::string("classify_") + name + ".txt"));
        out.expect(!want.empty(), std::string("missing golden for ") + name);
        out.expect(got == want, std::string("classify output drifted for ") + name);
    }
    // the pinned facts inside the goldens
    std::string g4 = slurp(golden_path("classify_G4.txt"));
    out.expect(g4.find("broadcast-game N=1") != std::string::npos, "G4 not a 1-broadcast game");
    std::string g1 = slurp(golden_path("classify_G1.txt"));
    out.expect(g1.find("series-parallel yes sync(par(a,b),c)") != std::string::npos,
               "G1 decomposition drifted");
    out.expect(g1.find("k-communicating k=1 cap=4 counterexample u=- v=a w=c p=1 q=2") !=
                   std::string::npos,
               "G1 connected-communication counterexample drifted");
    out.expect(slurp(golden_path("classify_P4.txt")).find("series-parallel no") !=
                   std::string::npos,
               "the path alphabet was not rejected");
    out.expect(slurp(golden_path("classify_TRI.txt")).find("triangulated yes") !=
                   std::string::npos,
               "the triangle fixture is not triangulated");
    return out;
}

// ---------------------------------------------------------------- criterion 6

Outcome criterion_bounds() {
    Outcome out;
    Game g1 = load_game(fixture_path("G1.zgame"));
    Game g3 = load_game(fixture_path("G3.zgame"));
    Game g4 = load_game(fixture_path("G4.zgame"));

    for (const Game* g : {&g1, &g3, &g4}) {
        auto rep = bound_K(*g, 0, 1);
        out.expect(rep.total.is_exact() && rep.total.exact->to_decimal() == "0",
                   "empty pool bound not zero");
        out.expect(recompute_k_report(rep, *g), "empty-pool report does not recompute");
    }

    for (const Game* g : {&g1, &g3}) {
        auto sp = classify_series_parallel(*g->alphabet);
        out.expect(sp.has_value(), "fixture alphabet not series-parallel");
        auto rep = bound_series_parallel(*sp, *g);
        std::string states = std::to_string(g->global_state_count());
        for (const auto& node : rep.nodes)
            if (node.kind == SPKind::leaf)
                out.expect(node.value.is_exact() && node.value.exact->to_decimal() == states,
                           "leaf bound is not the global state count");
        out.expect(recompute_sp_report(rep, *g), "series-parallel report does not recompute");
    }

    // cross-checks through the independent decimal arithmetic
    auto sp = classify_series_parallel(*g1.alphabet);
    auto sprep = bound_series_parallel(*sp, g1);
    std::string t0 = oracle::dec_mul(oracle::dec_mul("4", oracle::dec_pow("2", 16)),
                                     oracle::dec_mul("2", "16"));
    std::string t1 = oracle::dec_mul(oracle::dec_mul("4", "2"), "16");
    out.expect(sprep.total.is_exact() &&
                   sprep.total.exact->to_decimal() == oracle::dec_add(t0, t1) &&
                   sprep.total.exact->to_decimal() == "8388736",
               "series-parallel bound disagrees with the decimal oracle");

    auto krep = bound_K(g3, process_bit(0), 1);
    out.expect(krep.total.is_exact() && krep.total.exact->to_decimal() ==
                                            oracle::dec_mul("2", oracle::dec_pow("2", 64)),
               "pool bound disagrees with the decimal oracle");
    out.expect(recompute_k_report(krep, g3), "pool report does not recompute");

    auto ksingle = bound_K(g1, process_bit(0), 1);
    out.expect(ksingle.total.is_exact() &&
                   ksingle.total.exact->to_decimal() ==
                       oracle::dec_mul("4", oracle::dec_pow("2", 1536)),
               "singleton pool bound disagrees with the decimal oracle");
    out.expect(recompute_k_report(ksingle, g1), "singleton pool report does not recompute");

    auto k1 = bound_K(g3, process_bit(0), 1);
    auto k2 = bound_K(g3, process_bit(0), 3);
    out.expect(*k1.total.exact < *k2.total.exact, "bound not monotone in N");
    auto big = bound_K(g1, g1.alphabet->all_processes(), 1);
    out.expect(!big.total.is_exact(), "two-process pool unexpectedly fit the budget");
    out.expect(recompute_k_report(big, g1), "beyond-budget report does not recompute");
    return out;
}

// ---------------------------------------------------------------- criterion 7

Game random_game(testutil::Rng& rng) {
    size_t n_procs = 1 + rng.below(2);
    std::ostringstream text;
    std::vector<size_t> n_states;
    for (size_t p = 1; p <= n_procs; ++p) {
        size_t ns = 1 + rng.below(3);
        n_states.push_back(ns);
        text << "process " << p << " states";
        for (size_t s = 0; s < ns; ++s) text << " s" << s;
        text << " init s0 final";
        bool any = false;
        for (size_t s = 0; s < ns; ++s)
            if (rng.chance(55)) {
                text << " s" << s;
                any = true;
            }
        if (!any) text << " s" << (ns - 1);
        text << "\n";
    }
    size_t n_actions = 1 + rng.below(4);
    std::vector<std::vector<size_t>> doms;
    for (size_t a = 0; a < n_actions; ++a) {
        std::vector<size_t> dom;
        for (size_t p = 1; p <= n_procs; ++p)
            if (rng.chance(55)) dom.push_back(p);
        if (dom.empty()) dom.push_back(1 + rng.below(n_procs));
        doms.push_back(dom);
        text << "action x" << a << " dom";
        for (size_t p : dom) text << " " << p;
        text << (rng.chance(80) ? " ctrl" : " env") << "\n";
    }
    for (size_t a = 0; a < n_actions; ++a) {
        std::vector<size_t> idx(doms[a].size(), 0);
        while (true) {
            if (rng.chance(60)) {
                text << "trans x" << a;
                for (size_t i = 0; i < doms[a].size(); ++i)
                    text << " " << doms[a][i] << ":s" << idx[i];
                text << " ->";
                for (size_t i = 0; i < doms[a].size(); ++i)
                    text << " " << doms[a][i] << ":s" << rng.below(n_states[doms[a][i] - 1]);
                text << "\n";
            }
            size_t i = 0;
            while (i < idx.size() && ++idx[i] == n_states[doms[a][i] - 1]) idx[i++] = 0;
            if (i == idx.size()) break;
        }
    }
    return parse_game_text(text.str());
}

Outcome criterion_synthesis_oracle(double budget_seconds) {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    testutil::Rng rng(70707);
    uint64_t kept = 0, found_count = 0, skipped = 0;
    while (kept < 50 && seconds_since(t0) < budget_seconds) {
        Game g = random_game(rng);
        size_t cap = 2 + rng.below(3);
        auto brute = oracle::brute_force_synthesize(g, cap, ViewSemantics::literal, 50000);
        if (brute.aborted) {
            ++skipped;
            continue;
        }
        auto synth = synthesize(g, SynthesisConfig{cap, ViewSemantics::literal, 0});
        ++out.checks;
        if (synth.has_value() != brute.found) {
            out.fail("mismatch on generated game (kept index " + std::to_string(kept) + ", cap " +
                     std::to_string(cap) + ")");
            break;
        }
        if (synth) {
            ++found_count;
            out.expect(certify(g, *synth, cap).kind == Verdict::winning,
                       "synthesized strategy fails certification");
        }
        ++kept;
    }
    if (kept < 50) out.fail("only " + std::to_string(kept) + " corpus games within budget");

    // the two fixed endpoints
    Game g1 = load_game(fixture_path("G1.zgame"));
    auto s1 = synthesize(g1, SynthesisConfig{3, ViewSemantics::literal, 0});
    out.expect(s1.has_value(), "no winner on the sync game at cap 3");
    if (s1) out.expect(certify(g1, *s1, 3).kind == Verdict::winning, "sync winner not certified");
    auto brute_g1 = oracle::brute_force_synthesize(g1, 3, ViewSemantics::literal, 3000000);
    out.expect(!brute_g1.aborted && brute_g1.found,
               "plain enumeration disagrees on the sync game");

    Game g2 = load_game(fixture_path("G2.zgame"));
    out.expect(!synthesize(g2, SynthesisConfig{6, ViewSemantics::literal, 0}).has_value(),
               "a winner was found on the doomed game");
    auto brute_g2 = oracle::brute_force_synthesize(g2, 2, ViewSemantics::literal, 3000000);
    out.expect(!brute_g2.aborted && !brute_g2.found,
               "plain enumeration disagrees on the doomed game");

    if (seconds_since(t0) >= 300.0) out.fail("synthesis comparison exceeded five minutes");
    if (out.ok)
        out.detail = std::to_string(kept) + " corpus games (" + std::to_string(found_count) +
                     " solvable, " + std::to_string(skipped) + " skipped as intractable)";
    return out;
}

// ---------------------------------------------------------------- criterion 8

Outcome criterion_cli_round_trips() {
    Outcome out;
    int code = 0;

    Game g1 = load_game(fixture_path("G1.zgame"));
    std::string text =
        run_cli_capture("synthesize " + fixture_path("G1.zgame") + " --cap 3", code);
    out.expect(code == 0, "synthesize exit code");
    Strategy s = parse_strategy_text(text, g1);
    out.expect(serialize_strategy(s, g1) == text, "synthesized strategy round-trip drifted");

    std::string red = run_cli_capture("reduce " + fixture_path("G3.zgame") + " " +
                                          fixture_path("sigma6.zstrat") + " --cap 10",
                                      code);
    out.expect(code == 0, "reduce exit code");
    auto at = red.find("semantics");
    out.expect(at != std::string::npos, "reduce emits no strategy");
    Game g3 = load_game(fixture_path("G3.zgame"));
    if (at != std::string::npos) {
        Strategy r = parse_strategy_text(red.substr(at), g3);
        out.expect(serialize_strategy(r, g3) == red.substr(at),
                   "reduced strategy round-trip drifted");
    }
    out.expect(red.find("step 1 x=a y=a Q={1} b=a dur 4->3\n") != std::string::npos,
               "reduction log drifted");

    for (const auto& name :
         {"G1.zgame", "G2.zgame", "G3.zgame", "G4.zgame", "P4.zgame", "TRI.zgame"}) {
        Game g = load_game(fixture_path(name));
        Game h = parse_game_text(serialize_game(g));
        out.expect(serialize_game(h) == serialize_game(g),
                   std::string("game round-trip drifted for ") + name);
    }

    // exit codes: 0 positive, 1 negative, 2 input error, 3 bound exceeded
    run_cli_capture("synthesize " + fixture_path("G2.zgame") + " --cap 6", code);
    out.expect(code == 1, "absence should exit 1");
    run_cli_capture(
        "check " + fixture_path("G2.zgame") + " " + fixture_path("sigma_star.zstrat") +
            " --cap 10",
        code);
    out.expect(code == 1, "losing should exit 1");
    run_cli_capture(
        "check " + fixture_path("G1.zgame") + " " + fixture_path("sigma_star.zstrat") +
            " --cap 10",
        code);
    out.expect(code == 0, "winning should exit 0");
    run_cli_capture(
        "check " + fixture_path("G3.zgame") + " " + fixture_path("sigma_loop.zstrat") +
            " --cap 5",
        code);
    out.expect(code == 3, "bound exceeded should exit 3");
    run_cli_capture("classify " + fixture_path("nope.zgame"), code);
    out.expect(code == 2, "missing input should exit 2");
    run_cli_capture("broadcast " + fixture_path("G4.zgame") + " --play a --pool \"1 2\"", code);
    out.expect(code == 1, "refuted broadcast should exit 1");
    run_cli_capture("broadcast " + fixture_path("G4.zgame") + " --play m --pool \"1 2\"", code);
    out.expect(code == 0, "established broadcast should exit 0");

    // repeated runs are byte-identical
    for (const auto& name : {"G1", "G4", "P4", "TRI"}) {
        std::string first =
            run_cli_capture("classify " + fixture_path(std::string(name) + ".zgame"), code);
        std::string second =
            run_cli_capture("classify " + fixture_path(std::string(name) + ".zgame"), code);
        out.expect(first == second, "classify not reproducible");
    }
    std::string again =
        run_cli_capture("synthesize " + fixture_path("G1.zgame") + " --cap 3", code);
    out.expect(again == text, "synthesize not reproducible");
    for (const auto& args : {std::string("bounds ") + fixture_path("G3.zgame") + " --pool 1",
                             "check " + fixture_path("G3.zgame") + " " +
                                 fixture_path("sigma6.zstrat") + " --cap 10",
                             "broadcast " + fixture_path("G4.zgame") + " --play m --pool \"1 2\"",
                             "trace " + fixture_path("G1.zgame") + " --op linearizations --u \"a b\""}) {
        std::string first = run_cli_capture(args, code);
        std::string second = run_cli_capture(args, code);
        out.expect(!first.empty() && first == second, "report not reproducible: " + args);
    }
    return out;
}

} // namespace

int main() {
    struct Row {
        const char* name;
        std::function<Outcome()> run;
    };
    const Row rows[] = {
        {"1 trace-laws", [] { return criterion_trace_laws(10000); }},
        {"2 view-discrepancy", [] { return criterion_view_discrepancy(); }},
        {"3 broadcast-coherence", [] { return criterion_broadcast_coherence(); }},
        {"4 shortcut-suite", [] { return criterion_shortcut_suite(); }},
        {"5 classification-goldens", [] { return criterion_classification_goldens(); }},
        {"6 bounds", [] { return criterion_bounds(); }},
        {"7 synthesis-oracle", [] { return criterion_synthesis_oracle(240.0); }},
        {"8 cli-round-trips", [] { return criterion_cli_round_trips(); }},
    };
    int failures = 0;
    for (const auto& row : rows) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = row.run();
        } catch (const std::exception& e) {
            out.ok = false;
            out.detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion %s: %s (%llu checks, %.1fs%s%s)\n", row.name,
                    out.ok ? "PASS" : "FAIL", static_cast<unsigned long long>(out.checks),
                    seconds_since(t0), out.detail.empty() ? "" : "; ", out.detail.c_str());
        std::fflush(stdout);
        if (!out.ok) ++failures;
    }
    return failures;
}
