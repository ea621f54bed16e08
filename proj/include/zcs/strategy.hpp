#pragma once

#include <iosfwd>
#include <map>
#include <optional>

#include "zcs/game.hpp"

namespace zcs {

/**
 * Distributed strategy as a finite object: per-process decisions keyed by
 * canonical view traces (under the strategy's declared view semantics), with
 * a per-process default for unrecorded views. Only controllable actions are
 * stored; every environment action is implicitly allowed everywhere.
 */
struct Strategy {
    ViewSemantics semantics = ViewSemantics::literal;
    std::vector<LetterSet> defaults;                                // per process
    std::map<std::pair<ProcessId, std::vector<LetterId>>, LetterSet> decisions;

    bool operator==(const Strategy& other) const {
        return semantics == other.semantics && defaults == other.defaults &&
               decisions == other.decisions;
    }
};

Strategy parse_strategy(std::istream& in, const Game& g);
Strategy parse_strategy_text(const std::string& text, const Game& g);
Strategy load_strategy(const std::string& path, const Game& g);
std::string serialize_strategy(const Strategy& s, const Game& g);

// Allowed action set of process p after play u: A_e ∪ recorded-or-default.
LetterSet decision(const Game& g, const Strategy& s, ProcessId p, const Trace& u);

// x is allowed at u by every process in dom(x).
bool action_allowed(const Game& g, const Strategy& s, const Trace& u, LetterId x);

// Membership in the inductive sigma-play closure ("some linearization").
bool is_sigma_play(const Game& g, const Strategy& s, const Trace& u);

struct Verdict {
    enum Kind { winning, losing, bound_exceeded } kind = winning;
    std::optional<Trace> witness;

    static std::string_view kind_name(Kind k);
};

struct ExploreResult {
    std::vector<Play> plays;    // all sigma-plays of length <= cap, sorted
    std::vector<Play> maximal;  // sigma-plays with no one-action sigma-extension
    Verdict verdict;
};

/**
 * Expands all sigma-plays up to the cap. BoundExceeded if some sigma-play of
 * length cap still has an extension (witness: the least such play); else
 * Losing with the least maximal play ending in a non-final global state;
 * else Winning.
 */
ExploreResult explore(const Game& g, const Strategy& s, size_t cap);

// Sum of |u| over maximal sigma-plays; nullopt (unbounded) on BoundExceeded.
std::optional<uint64_t> duration(const Game& g, const Strategy& s, size_t cap);

} // namespace zcs
