#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zcs/errors.hpp"

namespace zcs {

using LetterId = uint32_t;
using ProcessId = uint32_t;

// Bitmask sets; a toolkit instance is capped at 64 letters / 64 processes.
using LetterSet = uint64_t;
using ProcessSet = uint64_t;

constexpr LetterSet letter_bit(LetterId a) { return LetterSet{1} << a; }
constexpr ProcessSet process_bit(ProcessId p) { return ProcessSet{1} << p; }

inline int popcount(uint64_t s) { return __builtin_popcountll(s); }

/**
 * Dependency alphabet: named letters with nonempty process domains and a
 * fixed total letter order used for normal forms. Two letters are dependent
 * iff their domains intersect; independency is the complement.
 */
class Alphabet {
public:
    Alphabet(std::vector<std::string> process_names,
             std::vector<std::pair<std::string, ProcessSet>> letters,
             std::vector<std::string> order = {});

    size_t letter_count() const { return letter_names_.size(); }
    size_t process_count() const { return process_names_.size(); }

    const std::string& letter_name(LetterId a) const { return letter_names_[a]; }
    const std::string& process_name(ProcessId p) const { return process_names_[p]; }

    std::optional<LetterId> find_letter(std::string_view name) const;
    std::optional<ProcessId> find_process(std::string_view name) const;
    LetterId letter(std::string_view name) const;     // throws UnknownLetter
    ProcessId process(std::string_view name) const;   // throws UnknownProcess

    ProcessSet domain(LetterId a) const { return domains_[a]; }
    ProcessSet all_processes() const { return all_processes_; }
    LetterSet all_letters() const { return all_letters_; }

    bool dependent(LetterId a, LetterId b) const { return (domains_[a] & domains_[b]) != 0; }
    bool independent(LetterId a, LetterId b) const { return !dependent(a, b); }
    // a I B: a independent of every letter of B
    bool independent_of(LetterId a, LetterSet B) const;

    // A_p = letters whose domain contains p
    LetterSet actions_of(ProcessId p) const { return actions_of_[p]; }

    // position of a letter in the declared total order (lower = smaller)
    uint32_t rank(LetterId a) const { return rank_[a]; }
    const std::vector<LetterId>& order() const { return order_; }

    bool operator==(const Alphabet& other) const;

private:
    std::vector<std::string> letter_names_;
    std::vector<std::string> process_names_;
    std::vector<ProcessSet> domains_;
    std::vector<LetterSet> actions_of_;
    std::vector<uint32_t> rank_;
    std::vector<LetterId> order_;
    ProcessSet all_processes_ = 0;
    LetterSet all_letters_ = 0;
};

using AlphabetRef = std::shared_ptr<const Alphabet>;

inline bool same_alphabet(const AlphabetRef& a, const AlphabetRef& b) {
    return a == b || (a && b && *a == *b);
}

} // namespace zcs
