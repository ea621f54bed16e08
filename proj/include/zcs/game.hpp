#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zcs/ordering.hpp"
#include "zcs/trace.hpp"

namespace zcs {

using StateId = uint32_t;
using GlobalState = std::vector<StateId>;

struct GameProcess {
    std::string name;
    std::vector<std::string> states;
    StateId initial = 0;
    std::vector<bool> is_final;

    std::optional<StateId> find_state(std::string_view s) const;
};

/**
 * Zielonka automaton plus the controllable/environment partition.
 * Letters of the derived dependency alphabet are the actions; domains come
 * from the action declarations. Immutable after parsing.
 */
struct Game {
    AlphabetRef alphabet;
    std::vector<GameProcess> processes;
    LetterSet controllable = 0;
    // per action: local pre-tuple -> local post-tuple, both indexed along
    // dom_list[a] (domain processes in ascending id order)
    std::vector<std::map<std::vector<StateId>, std::vector<StateId>>> transitions;
    std::vector<std::vector<ProcessId>> dom_list;
    std::vector<std::pair<ProcessId, ProcessId>> order_pairs; // declared `order` lines

    LetterSet env_actions() const { return alphabet->all_letters() & ~controllable; }
    GlobalState initial_state() const;
    bool is_final(const GlobalState& s) const;
    // Product of the per-process state counts, saturating at 2^32.
    uint64_t global_state_count() const;
    // Declared ordering if any order lines were given, else the total order
    // by declaration index.
    ProcessOrdering ordering() const;
    bool has_declared_order() const { return !order_pairs.empty(); }
};

Game parse_game(std::istream& in);
Game parse_game_text(const std::string& text);
Game load_game(const std::string& path);
std::string serialize_game(const Game& g);

/// A play: a trace executable from the initial global state, with its
/// resulting global state cached.
struct Play {
    Trace trace;
    GlobalState state;
};

Play initial_play(const Game& g);
std::optional<Play> try_extend(const Game& g, const Play& u, LetterId x);
Play extend_play(const Game& g, const Play& u, LetterId x); // throws NotEnabled

// Replays any linearization of t; nullopt if t is not a play.
std::optional<GlobalState> run_trace(const Game& g, const Trace& t);
std::optional<Play> make_play(const Game& g, const Trace& t);

// All plays of length <= max_len, one per equivalence class, sorted by trace.
std::vector<Play> enumerate_plays(const Game& g, size_t max_len);

// view_{A_p}(u)
Trace process_view(const Game& g, const Trace& u, ProcessId p, ViewSemantics semantics);

} // namespace zcs
