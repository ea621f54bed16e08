#pragma once

#include <memory>

#include "zcs/shortcut.hpp"

namespace zcs {

struct BroadcastCaps {
    size_t u_cap;
    size_t v_cap;
    size_t witness_cap;
};

// (M, M*|P|, 3M) with M the number of global states.
BroadcastCaps default_caps(const Game& g);

/**
 * Validity of a process ordering for the game: the domain of every prime
 * trace has a maximum. Checked via dependency-connected letter subsets (a
 * letter set is the alphabet of some prime trace iff its dependence graph is
 * connected).
 */
bool check_process_ordering(const Game& g, const ProcessOrdering& ord);

/**
 * u is a well-ordered pool-broadcast: the pool is its own closure, u is a
 * pool-broadcast, and the maximal process of the pool plays in u's last
 * action (vacuous for the empty pool).
 */
bool is_well_ordered_broadcast(const Game& g, const Trace& u, ProcessSet pool,
                               const ProcessOrdering& ord, size_t witness_cap);

/**
 * Least N <= M such that every prime play uv within the caps in which each
 * process of dom(v) acts at least N times admits a prefix v' of v with uv' a
 * well-ordered closure(dom(v))-broadcast; nullopt when none works.
 */
std::optional<uint32_t> decide_broadcast_game(const Game& g, const ProcessOrdering& ord,
                                              const BroadcastCaps& caps);

enum class SPKind { leaf, par, sync };

struct SPTree {
    SPKind kind = SPKind::leaf;
    LetterSet letters = 0;
    LetterId letter = 0; // for leaves
    std::unique_ptr<SPTree> left, right;
};

// Binary cograph decomposition of the dependence graph, or nullopt.
std::optional<SPTree> classify_series_parallel(const Alphabet& alph);
std::string sp_to_string(const SPTree& t, const Alphabet& alph);

// Independent route: no induced path on four letters in the dependence graph.
bool dependence_p4_free(const Alphabet& alph);

struct KCommViolation {
    Trace u, v, w;
    ProcessId p, q;
};

// Least play split uvw (by play, then split, then processes) violating the
// connected-communication implication at the given k, within the cap.
std::optional<KCommViolation> check_k_communicating(const Game& g, uint32_t k, size_t cap);

// Ordering condition for DAG-like communication: whenever p0,p1 share an
// action and p0 <= p2, either p1 <= p2 or p2 joins the action.
bool check_dag_condition(const Game& g, const ProcessOrdering& ord);

// Edges {p,q} of processes sharing an action.
std::vector<std::pair<ProcessId, ProcessId>> communication_graph(const Game& g);

// Every simple cycle has length exactly three, and every action's domain is
// connected in the graph.
bool check_triangulated(const Game& g, const std::vector<std::pair<ProcessId, ProcessId>>& edges);

} // namespace zcs
