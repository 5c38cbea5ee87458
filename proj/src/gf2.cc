#include "psdi/gf2.hh"

#include <bit>

namespace psdi {

int Gf2Row::leading() const
{
    for (std::size_t w = 0; w < words_.size(); ++w) {
        auto word = words_[w];
        if (w == std::size_t(n_ >> 6))
            word &= (std::uint64_t{1} << (n_ & 63)) - 1; // hide the rhs bit
        if (w > std::size_t(n_ >> 6))
            word = 0;
        if (word)
            return int(w * 64) + std::countr_zero(word);
    }
    return -1;
}

Gf2System::AddResult Gf2System::add(Gf2Row row)
{
    for (int lead = row.leading(); lead >= 0; lead = row.leading()) {
        int p = pivot_row_[lead];
        if (p < 0) {
            pivot_row_[lead] = int(rows_.size());
            rows_.push_back(std::move(row));
            return AddResult::independent;
        }
        row.add(rows_[p]);
    }
    if (row.rhs()) {
        consistent_ = false;
        return AddResult::inconsistent;
    }
    return AddResult::redundant;
}

} // namespace psdi
