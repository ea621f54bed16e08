#include "zcs/alphabet.hpp"

#include <algorithm>

namespace zcs {

Alphabet::Alphabet(std::vector<std::string> process_names,
                   std::vector<std::pair<std::string, ProcessSet>> letters,
                   std::vector<std::string> order)
    : process_names_(std::move(process_names)) {
    if (process_names_.size() > 64)
        throw SemanticError("too many processes (limit 64)");
    if (letters.size() > 64)
        throw SemanticError("too many letters (limit 64)");
    for (ProcessId p = 0; p < process_names_.size(); ++p)
        all_processes_ |= process_bit(p);

    for (auto& [name, dom] : letters) {
        if (dom == 0)
            throw SemanticError("letter '" + name + "' has an empty domain");
        if ((dom & ~all_processes_) != 0)
            throw SemanticError("letter '" + name + "' names an unknown process");
        if (find_letter(name))
            throw SemanticError("duplicate letter '" + name + "'");
        all_letters_ |= letter_bit(static_cast<LetterId>(letter_names_.size()));
        letter_names_.push_back(std::move(name));
        domains_.push_back(dom);
    }

    // total letter order: explicit list or declaration order
    rank_.assign(letter_names_.size(), UINT32_MAX);
    if (order.empty()) {
        for (LetterId a = 0; a < letter_names_.size(); ++a) {
            rank_[a] = a;
            order_.push_back(a);
        }
    } else {
        if (order.size() != letter_names_.size())
            throw SemanticError("letter order must list every letter exactly once");
        for (const auto& name : order) {
            auto a = find_letter(name);
            if (!a)
                throw UnknownLetter("unknown letter '" + name + "' in letter order");
            if (rank_[*a] != UINT32_MAX)
                throw SemanticError("letter '" + name + "' repeated in letter order");
            rank_[*a] = static_cast<uint32_t>(order_.size());
            order_.push_back(*a);
        }
    }

    actions_of_.assign(process_names_.size(), 0);
    for (LetterId a = 0; a < letter_names_.size(); ++a)
        for (ProcessId p = 0; p < process_names_.size(); ++p)
            if (domains_[a] & process_bit(p))
                actions_of_[p] |= letter_bit(a);
}

std::optional<LetterId> Alphabet::find_letter(std::string_view name) const {
    for (LetterId a = 0; a < letter_names_.size(); ++a)
        if (letter_names_[a] == name) return a;
    return std::nullopt;
}

std::optional<ProcessId> Alphabet::find_process(std::string_view name) const {
    for (ProcessId p = 0; p < process_names_.size(); ++p)
        if (process_names_[p] == name) return p;
    return std::nullopt;
}

LetterId Alphabet::letter(std::string_view name) const {
    auto a = find_letter(name);
    if (!a) throw UnknownLetter("unknown letter '" + std::string(name) + "'");
    return *a;
}

ProcessId Alphabet::process(std::string_view name) const {
    auto p = find_process(name);
    if (!p) throw UnknownProcess("unknown process '" + std::string(name) + "'");
    return *p;
}

bool Alphabet::independent_of(LetterId a, LetterSet B) const {
    for (LetterId b = 0; b < letter_names_.size(); ++b)
        if ((B & letter_bit(b)) && dependent(a, b)) return false;
    return true;
}

bool Alphabet::operator==(const Alphabet& other) const {
    return letter_names_ == other.letter_names_ &&
           process_names_ == other.process_names_ &&
           domains_ == other.domains_ &&
           order_ == other.order_;
}

} // namespace zcs
