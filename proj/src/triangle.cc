#include "psdi/triangle.hh"

#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace psdi {

LabeledTriGraph::LabeledTriGraph(std::array<int, 3> sizes) : sizes_(sizes)
{
    for (int s : sizes)
        if (s < 0)
            throw std::invalid_argument("negative part size");
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (int p = 0; p < 3; ++p) {
        const int lo = sizes[pairs[p][0]], hi = sizes[pairs[p][1]];
        rows_[p].assign(lo, std::vector<std::uint64_t>((hi + 63) / 64, 0));
        colours_[p].assign(std::size_t(lo) * std::size_t(hi), kNoEdge);
    }
}

int LabeledTriGraph::pair_index(int a, int b)
{
    if (a == 0 && b == 1)
        return 0;
    if (a == 0 && b == 2)
        return 1;
    if (a == 1 && b == 2)
        return 2;
    throw std::invalid_argument("part pair must be (0,1), (0,2) or (1,2)");
}

void LabeledTriGraph::add_edge(int a, int u, int b, int v, int colour)
{
    const int p = pair_index(a, b);
    if (u < 0 || u >= sizes_[a] || v < 0 || v >= sizes_[b])
        throw std::out_of_range("edge endpoint out of range");
    if (colour < 0)
        throw std::invalid_argument("edge colour must be non-negative");
    rows_[p][u][v >> 6] |= std::uint64_t{1} << (v & 63);
    colours_[p][std::size_t(u) * std::size_t(sizes_[b]) + std::size_t(v)] = colour;
}

bool LabeledTriGraph::has_edge(int a, int u, int b, int v) const
{
    return colour(a, u, b, v) != kNoEdge;
}

int LabeledTriGraph::colour(int a, int u, int b, int v) const
{
    const int p = pair_index(a, b);
    return colours_[p][std::size_t(u) * std::size_t(sizes_[b]) + std::size_t(v)];
}

std::size_t LabeledTriGraph::edge_count() const
{
    std::size_t n = 0;
    for (auto & rows : rows_)
        for (auto & row : rows)
            for (auto w : row)
                n += std::popcount(w);
    return n;
}

const std::vector<std::uint64_t> & LabeledTriGraph::row(int a, int u, int b) const
{
    return rows_[pair_index(a, b)][u];
}

namespace {

int first_common(const std::vector<std::uint64_t> & x, const std::vector<std::uint64_t> & y)
{
    for (std::size_t w = 0; w < x.size(); ++w)
        if (auto both = x[w] & y[w])
            return int(w * 64) + std::countr_zero(both);
    return -1;
}

/// Per vertex, one bitset over part 2 for each colour on its edges into part 2.
using ColourRows = std::vector<std::unordered_map<int, std::vector<std::uint64_t>>>;

ColourRows split_by_colour(const LabeledTriGraph & g, int part)
{
    ColourRows out(g.size(part));
    const std::size_t words = (g.size(2) + 63) / 64;
    for (int u = 0; u < g.size(part); ++u)
        for (int w = 0; w < g.size(2); ++w) {
            int c = g.colour(part, u, 2, w);
            if (c == LabeledTriGraph::kNoEdge)
                continue;
            auto & bits = out[u][c];
            if (bits.empty())
                bits.assign(words, 0);
            bits[w >> 6] |= std::uint64_t{1} << (w & 63);
        }
    return out;
}

} // namespace

std::optional<Triangle> find_triangle(const LabeledTriGraph & g, TriangleMode mode)
{
    if (mode == TriangleMode::any) {
        for (int u = 0; u < g.size(0); ++u) {
            const auto & r01 = g.row(0, u, 1);
            const auto & r02 = g.row(0, u, 2);
            for (std::size_t wi = 0; wi < r01.size(); ++wi) {
                for (auto word = r01[wi]; word; word &= word - 1) {
                    int v = int(wi * 64) + std::countr_zero(word);
                    int w = first_common(r02, g.row(1, v, 2));
                    if (w >= 0)
                        return Triangle{u, v, w};
                }
            }
        }
        return std::nullopt;
    }
    const auto from0 = split_by_colour(g, 0);
    const auto from1 = split_by_colour(g, 1);
    for (int u = 0; u < g.size(0); ++u) {
        const auto & r01 = g.row(0, u, 1);
        for (std::size_t wi = 0; wi < r01.size(); ++wi) {
            for (auto word = r01[wi]; word; word &= word - 1) {
                int v = int(wi * 64) + std::countr_zero(word);
                int c = g.colour(0, u, 1, v);
                auto a = from0[u].find(c);
                auto b = from1[v].find(c);
                if (a == from0[u].end() || b == from1[v].end())
                    continue;
                int w = first_common(a->second, b->second);
                if (w >= 0)
                    return Triangle{u, v, w};
            }
        }
    }
    return std::nullopt;
}

} // namespace psdi
