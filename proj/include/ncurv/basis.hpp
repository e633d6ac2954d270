#pragma once

#include <cstdint>
#include <vector>

#include "ncurv/fock_vector.hpp"
#include "ncurv/word.hpp"

namespace ncurv {

/// Words of length < depth in alpha copies. Index = copy * per_copy + ordinal(word).
class TruncatedBasis {
public:
    TruncatedBasis(int n, std::size_t depth, std::uint32_t alpha = 1)
        : n_(n), depth_(depth), alpha_(alpha), per_copy_(basis_dimension(n, depth)), words_(enumerate_words_below(n, depth)) {}

    int n() const { return n_; }
    std::size_t depth() const { return depth_; }
    std::uint32_t alpha() const { return alpha_; }
    std::uint64_t per_copy() const { return per_copy_; }
    std::uint64_t size() const { return per_copy_ * alpha_; }

    const std::vector<Word>& words() const { return words_; }

    Label label(std::uint64_t index) const {
        return Label{static_cast<std::uint32_t>(index / per_copy_), words_[static_cast<std::size_t>(index % per_copy_)]};
    }

    bool contains(const Label& l) const { return l.copy < alpha_ && l.word.size() < depth_; }

    std::uint64_t index(const Label& l) const { return static_cast<std::uint64_t>(l.copy) * per_copy_ + ordinal(l.word, n_); }

private:
    int n_;
    std::size_t depth_;
    std::uint32_t alpha_;
    std::uint64_t per_copy_;
    std::vector<Word> words_;
};

}  // namespace ncurv
