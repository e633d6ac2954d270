#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ncurv {

/// A word over {1..n}: one byte per letter, letter values 1..255.
/// The empty string is the empty word e.
using Word = std::string;

/// Length-then-lexicographic order. Used for every basis and every reduction.
struct LengthLex {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

inline int letter(const Word& w, std::size_t pos) { return static_cast<unsigned char>(w[pos]); }
inline Word single(int i) { return Word(1, static_cast<char>(i)); }
inline Word power(int i, std::size_t k) { return Word(k, static_cast<char>(i)); }

/// True when every letter of w lies in [1, n].
bool valid_word(const Word& w, int n);

/// "e" for the empty word; digits when every letter is below 10, otherwise
/// letters joined by '.'.
std::string word_to_string(const Word& w);

/// Inverse of word_to_string; also accepts "" for e. Throws ParseError.
Word parse_word(std::string_view text, int n);

/// All n^length words of the given length in lexicographic order.
std::vector<Word> enumerate_words(int n, std::size_t length);

/// All words of length < depth in length-lex order.
std::vector<Word> enumerate_words_below(int n, std::size_t depth);

/// (n^k - 1)/(n - 1), the number of words of length < k.
/// Throws std::overflow_error instead of wrapping.
std::uint64_t basis_dimension(int n, std::size_t k);

/// n^k with overflow detection.
std::uint64_t checked_pow(int n, std::size_t k);

/// Position of w in the length-lex order of all words over n letters.
std::uint64_t ordinal(const Word& w, int n);

/// True when p is a prefix of w.
inline bool is_prefix(const Word& p, const Word& w) {
    return p.size() <= w.size() && w.compare(0, p.size(), p) == 0;
}

}  // namespace ncurv
