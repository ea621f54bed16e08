#include "zcs/trace.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>

namespace zcs {

ViewSemantics parse_semantics(std::string_view text) {
    if (text == "literal") return ViewSemantics::literal;
    if (text == "causal") return ViewSemantics::causal;
    throw SemanticError("unknown view semantics '" + std::string(text) + "'");
}

std::string_view semantics_name(ViewSemantics s) {
    return s == ViewSemantics::literal ? "literal" : "causal";
}

namespace {

// Lexicographically least linearization: repeatedly emit the least-ranked
// letter among the minimal events of the remaining word. Two minimal events
// never share a letter (equal letters are dependent, hence ordered).
std::vector<LetterId> least_linearization(const Alphabet& alph, std::vector<LetterId> w) {
    // pairwise-dependent words admit no commutation at all
    LetterSet distinct = 0;
    for (LetterId a : w) distinct |= letter_bit(a);
    bool rigid = true;
    for (LetterId a = 0; a < alph.letter_count() && rigid; ++a)
        for (LetterId b = a + 1; b < alph.letter_count() && rigid; ++b)
            if ((distinct & letter_bit(a)) && (distinct & letter_bit(b)) && alph.independent(a, b))
                rigid = false;
    if (rigid) return w;
    std::vector<LetterId> out;
    out.reserve(w.size());
    while (!w.empty()) {
        size_t best = w.size();
        for (size_t i = 0; i < w.size(); ++i) {
            bool minimal = true;
            for (size_t j = 0; j < i && minimal; ++j)
                if (alph.dependent(w[j], w[i])) minimal = false;
            if (minimal && (best == w.size() || alph.rank(w[i]) < alph.rank(w[best])))
                best = i;
        }
        assert(best < w.size());
        out.push_back(w[best]);
        w.erase(w.begin() + static_cast<ptrdiff_t>(best));
    }
    return out;
}

} // namespace

Trace Trace::normalize(AlphabetRef alphabet, std::span<const LetterId> word) {
    Trace t(alphabet);
    for (LetterId a : word)
        if (a >= alphabet->letter_count())
            throw UnknownLetter("letter id out of range");
    t.word_ = least_linearization(*alphabet, {word.begin(), word.end()});
    return t;
}

Trace Trace::parse(AlphabetRef alphabet, std::string_view text) {
    std::vector<LetterId> word;
    size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
        size_t j = i;
        while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
        if (j > i) {
            std::string_view tok = text.substr(i, j - i);
            if (tok != "-") word.push_back(alphabet->letter(tok));
        }
        i = j;
    }
    return normalize(std::move(alphabet), word);
}

LetterSet Trace::letters() const {
    LetterSet s = 0;
    for (LetterId a : word_) s |= letter_bit(a);
    return s;
}

ProcessSet Trace::domain() const {
    ProcessSet s = 0;
    for (LetterId a : word_) s |= alphabet_->domain(a);
    return s;
}

size_t Trace::count_for(ProcessId p) const {
    if (p >= alphabet_->process_count())
        throw UnknownProcess("process id out of range");
    size_t n = 0;
    for (LetterId a : word_)
        if (alphabet_->domain(a) & process_bit(p)) ++n;
    return n;
}

std::string Trace::str() const {
    if (word_.empty()) return "-";
    std::string s;
    for (size_t i = 0; i < word_.size(); ++i) {
        if (i) s += ' ';
        s += alphabet_->letter_name(word_[i]);
    }
    return s;
}

bool Trace::operator==(const Trace& other) const {
    if (!same_alphabet(alphabet_, other.alphabet_))
        throw AlphabetMismatch("comparing traces over different alphabets");
    return word_ == other.word_;
}

std::strong_ordering Trace::operator<=>(const Trace& other) const {
    size_t n = std::min(word_.size(), other.word_.size());
    for (size_t i = 0; i < n; ++i) {
        auto ra = alphabet_->rank(word_[i]);
        auto rb = alphabet_->rank(other.word_[i]);
        if (ra != rb) return ra <=> rb;
    }
    return word_.size() <=> other.word_.size();
}

Trace concat(const Trace& u, const Trace& v) {
    if (!same_alphabet(u.alphabet(), v.alphabet()))
        throw AlphabetMismatch("concat over different alphabets");
    std::vector<LetterId> w = u.word();
    w.insert(w.end(), v.word().begin(), v.word().end());
    return Trace::normalize(u.alphabet(), w);
}

Trace append(const Trace& u, LetterId a) {
    std::vector<LetterId> w = u.word();
    w.push_back(a);
    return Trace::normalize(u.alphabet(), w);
}

std::optional<Trace> prefix_residual(const Trace& u, const Trace& v) {
    if (!same_alphabet(u.alphabet(), v.alphabet()))
        throw AlphabetMismatch("prefix over different alphabets");
    const Alphabet& alph = *u.alphabet();
    // Greedy left division: each letter of u must occur in the remainder of v
    // with no earlier dependent letter in front of it.
    std::vector<LetterId> rest = v.word();
    for (LetterId a : u.word()) {
        size_t pos = rest.size();
        for (size_t i = 0; i < rest.size(); ++i) {
            if (rest[i] == a) { pos = i; break; }
            if (alph.dependent(rest[i], a)) return std::nullopt;
        }
        if (pos == rest.size()) return std::nullopt;
        rest.erase(rest.begin() + static_cast<ptrdiff_t>(pos));
    }
    return Trace::normalize(u.alphabet(), rest);
}

bool is_prefix(const Trace& u, const Trace& v) {
    return prefix_residual(u, v).has_value();
}

LetterSet maximal_letters(const Trace& u) {
    const auto& w = u.word();
    const Alphabet& alph = *u.alphabet();
    LetterSet s = 0;
    for (size_t i = 0; i < w.size(); ++i) {
        bool maximal = true;
        for (size_t j = i + 1; j < w.size() && maximal; ++j)
            if (alph.dependent(w[i], w[j])) maximal = false;
        if (maximal) s |= letter_bit(w[i]);
    }
    return s;
}

namespace {

// Count maximal events (not letters): two maximal events cannot share a
// letter, so the letter set is enough.
int maximal_event_count(const Trace& u) {
    return popcount(maximal_letters(u));
}

} // namespace

bool is_prime(const Trace& u) {
    return !u.empty() && maximal_event_count(u) == 1;
}

LetterId prime_last(const Trace& u) {
    if (!is_prime(u)) throw NotPrime("trace '" + u.str() + "' is not prime");
    LetterSet m = maximal_letters(u);
    return static_cast<LetterId>(__builtin_ctzll(m));
}

bool is_prime_for(const Trace& u, LetterSet B) {
    if (u.empty()) return false;
    LetterSet m = maximal_letters(u);
    return (m & ~B) == 0;
}

bool trace_independent_of(const Trace& u, LetterSet B) {
    for (LetterId a : u.word())
        if (!u.alphabet()->independent_of(a, B)) return false;
    return true;
}

bool traces_independent(const Trace& u, const Trace& v) {
    if (!same_alphabet(u.alphabet(), v.alphabet()))
        throw AlphabetMismatch("independence over different alphabets");
    return trace_independent_of(u, v.letters());
}

Trace view_of(const Trace& u, LetterSet B, ViewSemantics semantics) {
    const Alphabet& alph = *u.alphabet();
    if ((B & ~alph.all_letters()) != 0)
        throw UnknownLetter("view letter set out of range");
    // Strip maximal events that may sit in the residual until none is left:
    //  - literal: residual letters must be independent of B;
    //  - causal: residual letters must not be in B.
    std::vector<LetterId> w = u.word();
    bool changed = true;
    while (changed && !w.empty()) {
        changed = false;
        for (size_t ii = w.size(); ii-- > 0;) {
            bool maximal = true;
            for (size_t j = ii + 1; j < w.size() && maximal; ++j)
                if (alph.dependent(w[ii], w[j])) maximal = false;
            if (!maximal) continue;
            bool strippable = semantics == ViewSemantics::literal
                                  ? alph.independent_of(w[ii], B)
                                  : (letter_bit(w[ii]) & B) == 0;
            if (strippable) {
                w.erase(w.begin() + static_cast<ptrdiff_t>(ii));
                changed = true;
            }
        }
    }
    return Trace::normalize(u.alphabet(), w);
}

std::vector<std::vector<LetterId>> linearizations(const Trace& u, size_t cap) {
    if (u.size() > cap)
        throw TooLong("trace too long for class enumeration");
    const Alphabet& alph = *u.alphabet();
    std::vector<std::vector<LetterId>> out;
    std::vector<LetterId> rest = u.word();
    std::vector<LetterId> acc;
    std::function<void()> rec = [&]() {
        if (rest.empty()) {
            out.push_back(acc);
            return;
        }
        for (size_t i = 0; i < rest.size(); ++i) {
            bool minimal = true;
            for (size_t j = 0; j < i && minimal; ++j)
                if (alph.dependent(rest[j], rest[i])) minimal = false;
            if (!minimal) continue;
            LetterId a = rest[i];
            rest.erase(rest.begin() + static_cast<ptrdiff_t>(i));
            acc.push_back(a);
            rec();
            acc.pop_back();
            rest.insert(rest.begin() + static_cast<ptrdiff_t>(i), a);
        }
    };
    rec();
    return out;
}

std::vector<Trace> trace_prefixes(const Trace& u) {
    std::set<std::vector<LetterId>> seen;
    std::vector<Trace> out;
    // BFS over "take one minimal event of the residual" moves.
    std::vector<std::pair<std::vector<LetterId>, std::vector<LetterId>>> frontier;
    const Alphabet& alph = *u.alphabet();
    Trace eps(u.alphabet());
    seen.insert(eps.word());
    out.push_back(eps);
    frontier.push_back({{}, u.word()});
    while (!frontier.empty()) {
        auto [pre, rest] = std::move(frontier.back());
        frontier.pop_back();
        for (size_t i = 0; i < rest.size(); ++i) {
            bool minimal = true;
            for (size_t j = 0; j < i && minimal; ++j)
                if (alph.dependent(rest[j], rest[i])) minimal = false;
            if (!minimal) continue;
            auto pre2 = pre;
            pre2.push_back(rest[i]);
            auto rest2 = rest;
            rest2.erase(rest2.begin() + static_cast<ptrdiff_t>(i));
            Trace t = Trace::normalize(u.alphabet(), pre2);
            if (seen.insert(t.word()).second) {
                out.push_back(t);
                frontier.push_back({std::move(pre2), std::move(rest2)});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace zcs
