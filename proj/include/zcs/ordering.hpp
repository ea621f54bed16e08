#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zcs/alphabet.hpp"

namespace zcs {

/**
 * Partial order on processes (reflexive-transitive closure maintained).
 * Built from declared pairs or as a total order by declaration index.
 */
class ProcessOrdering {
public:
    explicit ProcessOrdering(size_t n);

    static ProcessOrdering total(size_t n);
    // Closure of the given p <= q pairs; throws SemanticError on an
    // antisymmetry violation.
    static ProcessOrdering from_pairs(size_t n,
                                      const std::vector<std::pair<ProcessId, ProcessId>>& pairs);

    size_t size() const { return n_; }
    bool le(ProcessId p, ProcessId q) const { return leq_[p * n_ + q]; }

    // downward closure { p | p <= q for some q in set }
    ProcessSet closure(ProcessSet set) const;

    // unique m in set with s <= m for all s in set, if any
    std::optional<ProcessId> maximum_of(ProcessSet set) const;

    bool operator==(const ProcessOrdering& other) const {
        return n_ == other.n_ && leq_ == other.leq_;
    }

private:
    size_t n_;
    std::vector<bool> leq_;
};

} // namespace zcs
