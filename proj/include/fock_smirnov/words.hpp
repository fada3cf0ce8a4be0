#pragma once

// Free-semigroup combinatorics: words over {1..d}, graded-lex order,
// transposition and letter counting.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fock_smirnov {

/// A word i_1 i_2 ... i_k in the free semigroup on d letters. Letters are
/// 1-based; the empty word is the unit.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<int> letters) : letters_(letters) {}
    explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    int operator[](std::size_t k) const { return letters_[k]; }
    const std::vector<int>& letters() const noexcept { return letters_; }

    auto begin() const noexcept { return letters_.begin(); }
    auto end() const noexcept { return letters_.end(); }

    /// Largest letter, or 0 for the empty word.
    int max_letter() const noexcept {
        return letters_.empty() ? 0 : *std::max_element(letters_.begin(), letters_.end());
    }

    bool fits(int d) const noexcept {
        return std::all_of(letters_.begin(), letters_.end(),
                           [d](int l) { return l >= 1 && l <= d; });
    }

    /// Graded order: shorter words first, ties broken lexicographically.
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept {
        if (a.size() != b.size()) return a.size() <=> b.size();
        return a.letters_ <=> b.letters_;
    }
    friend bool operator==(const Word& a, const Word& b) noexcept = default;

    friend std::ostream& operator<<(std::ostream& os, const Word& w) {
        if (w.empty()) return os << "()";
        for (int l : w.letters_) os << l;
        return os;
    }

private:
    std::vector<int> letters_;
};

/// Letter-count vector (n_1, ..., n_d). Ordered by total degree, then lex.
struct MultiIndex {
    std::vector<int> counts;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> c) : counts(std::move(c)) {}
    MultiIndex(std::initializer_list<int> c) : counts(c) {}

    int dim() const noexcept { return static_cast<int>(counts.size()); }
    int total() const noexcept { return std::accumulate(counts.begin(), counts.end(), 0); }

    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) noexcept {
        const int ta = a.total();
        const int tb = b.total();
        if (ta != tb) return ta <=> tb;
        return a.counts <=> b.counts;
    }
    friend bool operator==(const MultiIndex& a, const MultiIndex& b) noexcept = default;

    MultiIndex& operator+=(const MultiIndex& o) {
        if (o.counts.size() != counts.size())
            throw std::invalid_argument("MultiIndex: dimension mismatch");
        for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += o.counts[k];
        return *this;
    }
    friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) { return a += b; }
};

inline Word concat(const Word& u, const Word& v) {
    std::vector<int> out;
    out.reserve(u.size() + v.size());
    out.insert(out.end(), u.begin(), u.end());
    out.insert(out.end(), v.begin(), v.end());
    return Word(std::move(out));
}

inline Word transpose(const Word& w) {
    return Word(std::vector<int>(w.letters().rbegin(), w.letters().rend()));
}

inline MultiIndex letter_count(const Word& w, int d) {
    if (!w.fits(d)) throw std::invalid_argument("letter_count: letter outside {1..d}");
    MultiIndex n(std::vector<int>(static_cast<std::size_t>(d), 0));
    for (int l : w) ++n.counts[static_cast<std::size_t>(l - 1)];
    return n;
}

/// Prefix of length k and the remaining suffix.
inline std::pair<Word, Word> split_at(const Word& w, std::size_t k) {
    const auto& l = w.letters();
    return {Word(std::vector<int>(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(k))),
            Word(std::vector<int>(l.begin() + static_cast<std::ptrdiff_t>(k), l.end()))};
}

inline bool has_prefix(const Word& w, const Word& p) {
    return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

inline bool has_suffix(const Word& w, const Word& s) {
    return s.size() <= w.size() &&
           std::equal(s.begin(), s.end(), w.begin() + static_cast<std::ptrdiff_t>(w.size() - s.size()));
}

/// Number of words of length <= n over d letters.
inline std::size_t word_count(int d, int n) {
    if (d < 1 || n < 0) throw std::invalid_argument("word_count: need d >= 1, n >= 0");
    std::size_t total = 0;
    std::size_t layer = 1;
    for (int k = 0; k <= n; ++k) {
        total += layer;
        layer *= static_cast<std::size_t>(d);
    }
    return total;
}

/// Position of w in enumerate_words(d, N) for any N >= |w|.
inline std::size_t word_index(const Word& w, int d) {
    std::size_t offset = w.empty() ? 0 : word_count(d, static_cast<int>(w.size()) - 1);
    std::size_t rank = 0;
    for (int l : w) rank = rank * static_cast<std::size_t>(d) + static_cast<std::size_t>(l - 1);
    return offset + rank;
}

/// All words of length <= n in graded-lex order; position 0 is the empty word.
inline std::vector<Word> enumerate_words(int d, int n) {
    if (d < 1 || n < 0) throw std::invalid_argument("enumerate_words: need d >= 1, n >= 0");
    std::vector<Word> out;
    out.reserve(word_count(d, n));
    out.emplace_back();
    std::size_t layer_begin = 0;
    for (int k = 1; k <= n; ++k) {
        const std::size_t layer_end = out.size();
        for (std::size_t p = layer_begin; p < layer_end; ++p) {
            for (int l = 1; l <= d; ++l) {
                std::vector<int> letters = out[p].letters();
                letters.push_back(l);
                out.emplace_back(std::move(letters));
            }
        }
        layer_begin = layer_end;
    }
    return out;
}

/// Words of exactly length k, in lex order.
inline std::vector<Word> words_of_length(int d, int k) {
    auto all = enumerate_words(d, k);
    const std::size_t first = k == 0 ? 0 : word_count(d, k - 1);
    return {all.begin() + static_cast<std::ptrdiff_t>(first), all.end()};
}

/// Distinct words with the given letter counts (|n|!/n! of them), lex order.
inline std::vector<Word> words_with_counts(const MultiIndex& n) {
    std::vector<int> letters;
    for (int k = 0; k < n.dim(); ++k)
        letters.insert(letters.end(), static_cast<std::size_t>(n.counts[static_cast<std::size_t>(k)]), k + 1);
    std::vector<Word> out;
    do {
        out.emplace_back(letters);
    } while (std::next_permutation(letters.begin(), letters.end()));
    return out;
}

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (int l : w) h = (h ^ static_cast<std::size_t>(l)) * 1099511628211ull;
        return h ^ w.size();
    }
};

}  // namespace fock_smirnov
