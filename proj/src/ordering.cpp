#include "zcs/ordering.hpp"

namespace zcs {

ProcessOrdering::ProcessOrdering(size_t n) : n_(n), leq_(n * n, false) {
    for (size_t p = 0; p < n; ++p) leq_[p * n + p] = true;
}

ProcessOrdering ProcessOrdering::total(size_t n) {
    ProcessOrdering ord(n);
    for (size_t p = 0; p < n; ++p)
        for (size_t q = p; q < n; ++q) ord.leq_[p * n + q] = true;
    return ord;
}

ProcessOrdering ProcessOrdering::from_pairs(
    size_t n, const std::vector<std::pair<ProcessId, ProcessId>>& pairs) {
    ProcessOrdering ord(n);
    for (auto [p, q] : pairs) ord.leq_[p * n + q] = true;
    // Floyd-Warshall style transitive closure
    for (size_t k = 0; k < n; ++k)
        for (size_t p = 0; p < n; ++p)
            if (ord.leq_[p * n + k])
                for (size_t q = 0; q < n; ++q)
                    if (ord.leq_[k * n + q]) ord.leq_[p * n + q] = true;
    for (size_t p = 0; p < n; ++p)
        for (size_t q = p + 1; q < n; ++q)
            if (ord.leq_[p * n + q] && ord.leq_[q * n + p])
                throw SemanticError("process ordering is not antisymmetric");
    return ord;
}

ProcessSet ProcessOrdering::closure(ProcessSet set) const {
    ProcessSet out = 0;
    for (ProcessId p = 0; p < n_; ++p)
        for (ProcessId q = 0; q < n_; ++q)
            if ((set & process_bit(q)) && le(p, q)) out |= process_bit(p);
    return out;
}

std::optional<ProcessId> ProcessOrdering::maximum_of(ProcessSet set) const {
    for (ProcessId m = 0; m < n_; ++m) {
        if (!(set & process_bit(m))) continue;
        bool is_max = true;
        for (ProcessId s = 0; s < n_ && is_max; ++s)
            if ((set & process_bit(s)) && !le(s, m)) is_max = false;
        if (is_max) return m;
    }
    return std::nullopt;
}

} // namespace zcs
