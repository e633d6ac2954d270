#include "ncurv/word.hpp"

#include <limits>
#include <stdexcept>

#include "ncurv/errors.hpp"

namespace ncurv {

bool valid_word(const Word& w, int n) {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (letter(w, i) < 1 || letter(w, i) > n) return false;
    return true;
}

std::string word_to_string(const Word& w) {
    if (w.empty()) return "e";
    bool small = true;
    for (std::size_t i = 0; i < w.size(); ++i) small = small && letter(w, i) < 10;
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!small && i > 0) out += '.';
        out += std::to_string(letter(w, i));
    }
    return out;
}

Word parse_word(std::string_view text, int n) {
    if (text.empty() || text == "e") return {};
    Word w;
    auto push = [&](long v) {
        if (v < 1 || v > n) throw ParseError("letter " + std::to_string(v) + " outside [1, " + std::to_string(n) + "]");
        w.push_back(static_cast<char>(v));
    };
    if (text.find('.') != std::string_view::npos) {
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('.', start);
            if (end == std::string_view::npos) end = text.size();
            std::string_view part = text.substr(start, end - start);
            if (part.empty()) throw ParseError("malformed word: " + std::string(text));
            long v = 0;
            for (char c : part) {
                if (c < '0' || c > '9') throw ParseError("malformed word: " + std::string(text));
                v = v * 10 + (c - '0');
                if (v > 255) throw ParseError("letter too large in word: " + std::string(text));
            }
            push(v);
            start = end + 1;
        }
        return w;
    }
    for (char c : text) {
        if (c < '0' || c > '9') throw ParseError("malformed word: " + std::string(text));
        push(c - '0');
    }
    return w;
}

std::vector<Word> enumerate_words(int n, std::size_t length) {
    if (n < 1) throw std::invalid_argument("alphabet size must be at least 1");
    std::vector<Word> out;
    out.reserve(static_cast<std::size_t>(checked_pow(n, length)));
    Word w(length, static_cast<char>(1));
    while (true) {
        out.push_back(w);
        std::size_t pos = length;
        while (pos > 0) {
            --pos;
            if (letter(w, pos) < n) {
                w[pos] = static_cast<char>(letter(w, pos) + 1);
                break;
            }
            w[pos] = static_cast<char>(1);
            if (pos == 0) return out;
        }
        if (length == 0) return out;
    }
}

std::vector<Word> enumerate_words_below(int n, std::size_t depth) {
    std::vector<Word> out;
    out.reserve(static_cast<std::size_t>(basis_dimension(n, depth)));
    for (std::size_t l = 0; l < depth; ++l) {
        auto level = enumerate_words(n, l);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::uint64_t checked_pow(int n, std::size_t k) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (out > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(n))
            throw std::overflow_error("n^k overflows 64 bits");
        out *= static_cast<std::uint64_t>(n);
    }
    return out;
}

std::uint64_t basis_dimension(int n, std::size_t k) {
    if (n < 2) throw std::invalid_argument("basis_dimension requires n >= 2");
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (out > (std::numeric_limits<std::uint64_t>::max() - 1) / static_cast<std::uint64_t>(n))
            throw std::overflow_error("basis dimension overflows 64 bits");
        out = out * static_cast<std::uint64_t>(n) + 1;
    }
    return out;
}

std::uint64_t ordinal(const Word& w, int n) {
    std::uint64_t lex = 0;
    for (std::size_t i = 0; i < w.size(); ++i) lex = lex * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(letter(w, i) - 1);
    return basis_dimension(n, w.size()) + lex;
}

}  // namespace ncurv
