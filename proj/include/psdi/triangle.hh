#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace psdi {

/// Three-partite graph with bitset adjacency between each pair of parts and
/// an optional colour per edge. Pair p in {01, 02, 12} is indexed 0, 1, 2.
class LabeledTriGraph {
public:
    static constexpr int kNoEdge = -1;

    explicit LabeledTriGraph(std::array<int, 3> sizes);

    int size(int part) const { return sizes_[part]; }

    /// Adds edge (u in part a, v in part b), a < b, with colour `colour` >= 0.
    void add_edge(int a, int u, int b, int v, int colour = 0);

    bool has_edge(int a, int u, int b, int v) const;
    int colour(int a, int u, int b, int v) const;
    std::size_t edge_count() const;

    /// Adjacency row of u (in part a) over part b, a < b.
    const std::vector<std::uint64_t> & row(int a, int u, int b) const;

private:
    std::array<int, 3> sizes_;
    // rows_[pair][u] is a bitset over the higher part
    std::array<std::vector<std::vector<std::uint64_t>>, 3> rows_;
    std::array<std::vector<int>, 3> colours_;

    static int pair_index(int a, int b);
};

enum class TriangleMode { any, single_label };

using Triangle = std::array<int, 3>;

/// Lexicographically first triangle (v0, v1, v2). In single_label mode the
/// three edges must carry the same colour.
std::optional<Triangle> find_triangle(const LabeledTriGraph & g, TriangleMode mode);

} // namespace psdi
