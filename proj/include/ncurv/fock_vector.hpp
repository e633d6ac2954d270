#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "ncurv/scalar.hpp"
#include "ncurv/word.hpp"

namespace ncurv {

/// Basis label: (copy index, word). Dense models use the copy index as the
/// coordinate and the empty word.
struct Label {
    std::uint32_t copy = 0;
    Word word;
};

/// Copy first, then length-lex on the word.
struct LabelOrder {
    bool operator()(const Label& a, const Label& b) const {
        if (a.copy != b.copy) return a.copy < b.copy;
        return LengthLex{}(a.word, b.word);
    }
};

inline bool operator==(const Label& a, const Label& b) { return a.copy == b.copy && a.word == b.word; }

/// Finitely supported vector in the multiplicity-alpha Fock space over n letters.
/// No zero entries are stored.
template <class S>
class FockVector {
public:
    using Map = std::map<Label, S, LabelOrder>;

    FockVector() = default;
    FockVector(int n, std::uint32_t alpha) : n_(n), alpha_(alpha) {}

    static FockVector basis(int n, std::uint32_t alpha, std::uint32_t copy, const Word& w, S value = S(1)) {
        FockVector v(n, alpha);
        v.set(copy, w, std::move(value));
        return v;
    }

    int n() const { return n_; }
    std::uint32_t alpha() const { return alpha_; }
    const Map& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    S at(std::uint32_t copy, const Word& w) const {
        auto it = entries_.find(Label{copy, w});
        return it == entries_.end() ? S(0) : it->second;
    }

    void set(std::uint32_t copy, const Word& w, S value) {
        check_label(copy, w);
        Label key{copy, w};
        if (is_zero(value))
            entries_.erase(key);
        else
            entries_[key] = std::move(value);
    }

    void add(std::uint32_t copy, const Word& w, const S& value) {
        if (is_zero(value)) return;
        check_label(copy, w);
        Label key{copy, w};
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            entries_.emplace(std::move(key), value);
            return;
        }
        it->second += value;
        if (is_zero(it->second)) entries_.erase(it);
    }

    FockVector& operator+=(const FockVector& o) {
        check_compatible(o);
        for (const auto& [k, v] : o.entries_) add(k.copy, k.word, v);
        return *this;
    }
    FockVector& operator-=(const FockVector& o) {
        check_compatible(o);
        for (const auto& [k, v] : o.entries_) add(k.copy, k.word, -v);
        return *this;
    }
    FockVector& operator*=(const S& c) {
        if (is_zero(c)) {
            entries_.clear();
            return *this;
        }
        for (auto& [k, v] : entries_) v *= c;
        return *this;
    }

    friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
    friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
    friend FockVector operator*(const S& c, FockVector a) { return a *= c; }
    friend bool operator==(const FockVector& a, const FockVector& b) {
        return a.n_ == b.n_ && a.alpha_ == b.alpha_ && a.entries_ == b.entries_;
    }

    /// Longest word in the support, 0 for the zero vector.
    std::size_t max_length() const {
        std::size_t m = 0;
        for (const auto& [k, v] : entries_) m = std::max(m, k.word.size());
        return m;
    }

    void check_compatible(const FockVector& o) const {
        if (o.n_ != n_ || o.alpha_ != alpha_)
            throw std::invalid_argument("vectors live in different Fock spaces");
    }

private:
    void check_label(std::uint32_t copy, const Word& w) const {
        if (copy >= alpha_) throw std::out_of_range("copy index " + std::to_string(copy) + " outside multiplicity");
        if (!valid_word(w, n_)) throw std::out_of_range("word letter outside [1, n]");
    }

    int n_ = 2;
    std::uint32_t alpha_ = 1;
    Map entries_;
};

/// <x, y>: linear in x, conjugate-linear in y. Summation follows the label order.
template <class S>
S inner_product(const FockVector<S>& x, const FockVector<S>& y) {
    x.check_compatible(y);
    S out(0);
    const auto& small = x.size() <= y.size() ? x.entries() : y.entries();
    const bool x_small = x.size() <= y.size();
    for (const auto& [k, v] : small) {
        S other = x_small ? y.at(k.copy, k.word) : x.at(k.copy, k.word);
        if (is_zero(other)) continue;
        out += x_small ? v * conj(other) : other * conj(v);
    }
    return out;
}

template <class S>
RealOf<S> norm2(const FockVector<S>& x) {
    RealOf<S> out(0);
    for (const auto& [k, v] : x.entries()) out += abs2(v);
    return out;
}

}  // namespace ncurv
