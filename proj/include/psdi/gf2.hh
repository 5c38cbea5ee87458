#pragma once

#include <cstdint>
#include <vector>

namespace psdi {

/// Linear equation over GF(2) on n unknowns, packed 64 coefficients per word.
/// Bit n holds the right-hand side.
class Gf2Row {
public:
    explicit Gf2Row(int n_vars) : n_(n_vars), words_((n_vars + 1 + 63) / 64, 0) {}

    int n_vars() const noexcept { return n_; }

    void flip(int i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    bool get(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set_rhs(bool v)
    {
        if (get(n_) != v)
            flip(n_);
    }
    bool rhs() const { return get(n_); }

    /// Index of the lowest coefficient set, or -1 when the row has none.
    int leading() const;

    void add(const Gf2Row & other)
    {
        for (std::size_t w = 0; w < words_.size(); ++w)
            words_[w] ^= other.words_[w];
    }

private:
    int n_;
    std::vector<std::uint64_t> words_;
};

/// Row-echelon system grown one equation at a time.
class Gf2System {
public:
    enum class AddResult { independent, redundant, inconsistent };

    explicit Gf2System(int n_vars) : n_(n_vars), pivot_row_(n_vars, -1) {}

    AddResult add(Gf2Row row);

    int n_vars() const noexcept { return n_; }
    int rank() const noexcept { return int(rows_.size()); }
    bool consistent() const noexcept { return consistent_; }

private:
    int n_;
    std::vector<Gf2Row> rows_;
    std::vector<int> pivot_row_;
    bool consistent_ = true;
};

} // namespace psdi
