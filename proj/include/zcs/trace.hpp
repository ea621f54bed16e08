#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "zcs/alphabet.hpp"

namespace zcs {

enum class ViewSemantics { literal, causal };

ViewSemantics parse_semantics(std::string_view text); // "literal" | "causal"
std::string_view semantics_name(ViewSemantics s);

/**
 * A Mazurkiewicz trace, stored as the canonical representative of its
 * commutation class: the lexicographically least linearization under the
 * alphabet's letter order. Equality and ordering are plain sequence
 * comparisons on the normal form. Immutable.
 */
class Trace {
public:
    explicit Trace(AlphabetRef alphabet) : alphabet_(std::move(alphabet)) {}

    // Canonical form of the class containing `word`; idempotent on normal forms.
    static Trace normalize(AlphabetRef alphabet, std::span<const LetterId> word);
    // Parses a space-separated letter sequence; "-" denotes the empty trace.
    static Trace parse(AlphabetRef alphabet, std::string_view text);

    const AlphabetRef& alphabet() const { return alphabet_; }
    const std::vector<LetterId>& word() const { return word_; }
    size_t size() const { return word_.size(); }
    bool empty() const { return word_.empty(); }

    LetterSet letters() const;   // alphabet(u)
    ProcessSet domain() const;   // dom(u) = union of letter domains
    size_t count_for(ProcessId p) const; // |u|_p

    std::string str() const;     // normal form, space-separated; empty -> "-"

    bool operator==(const Trace& other) const;
    // Lexicographic on letter ranks; a proper prefix sorts first.
    std::strong_ordering operator<=>(const Trace& other) const;

private:
    AlphabetRef alphabet_;
    std::vector<LetterId> word_;
};

Trace concat(const Trace& u, const Trace& v);
Trace append(const Trace& u, LetterId a);

// Residual w with u·w = v, when u is a prefix of v. Unique when present.
std::optional<Trace> prefix_residual(const Trace& u, const Trace& v);
bool is_prefix(const Trace& u, const Trace& v);

// Letters of maximal events (possible last letters of linearizations).
LetterSet maximal_letters(const Trace& u);

// Unique maximal event, i.e. all linearizations share the same last letter.
bool is_prime(const Trace& u);
// Last letter of a prime trace.
LetterId prime_last(const Trace& u); // throws NotPrime

// Every linearization ends with a letter of B. The empty trace is never
// B-prime. For a singleton B this coincides with "prime with last letter b".
bool is_prime_for(const Trace& u, LetterSet B);

// u I B: every letter of u independent of every letter of B.
bool trace_independent_of(const Trace& u, LetterSet B);
bool traces_independent(const Trace& u, const Trace& v);

/**
 * B-view of u.
 *  - literal: shortest prefix whose residual is independent of every letter
 *    of B (the definition the trace laws are proved with);
 *  - causal: least prefix containing every B-labelled event (its residual
 *    contains no B letters).
 */
Trace view_of(const Trace& u, LetterSet B, ViewSemantics semantics = ViewSemantics::literal);

// Full equivalence class of u as words; guarded by a length cap.
std::vector<std::vector<LetterId>> linearizations(const Trace& u, size_t cap = 10);

// All trace prefixes of u (deduplicated, sorted).
std::vector<Trace> trace_prefixes(const Trace& u);

} // namespace zcs
