#pragma once

// Test-only chain-level oracle: a CW model of the genus-g surface with b
// boundary components, independent of the combinatorial basis the library
// uses. One interior vertex v0 and one vertex per boundary component; edges
// a_i, b_i (loops at v0), x_j (v0 to w_j), r_j (boundary loops); a single
// 2-cell attached along prod [a_i,b_i] prod (x_j r_j x_j^{-1}), so its
// cellular boundary is sum_j r_j. Relative chains mod the boundary
// subcomplex drop the r_j and w_j cells.

#include "torelli/smith.hpp"

#include <vector>

namespace cw {

using torelli::Int;
using torelli::IntVec;
using torelli::Mat;

struct Model {
    std::size_t g, b;
    // Relative chain complex C2 -> C1 -> C0 with the boundary subcomplex
    // collapsed: C1 has basis (a_1, b_1, ..., a_g, b_g, x_1, ..., x_b).
    Mat d1; // 1 x (2g + b), boundary of edges onto v0
    Mat d2; // (2g + b) x 1, boundary of the 2-cell (zero after collapsing)

    explicit Model(std::size_t genus, std::size_t nbdry) : g(genus), b(nbdry)
    {
        d1 = Mat(1, 2 * g + b);
        for (std::size_t j = 0; j < b; ++j)
            d1(0, 2 * g + j) = -1; // x_j runs from v0 to the killed vertex w_j
        d2 = Mat(2 * g + b, 1);    // sum_j r_j dies in the quotient complex
    }

    std::size_t relative_h1_rank() const
    {
        // H1(Sigma, dSigma) = ker d1 / im d2 with im d2 = 0.
        std::size_t r1 = torelli::smith_normal_form(d1).rank();
        std::size_t r2 = torelli::smith_normal_form(d2).rank();
        return (2 * g + b) - r1 - r2;
    }

    // Rank of the subgroup of relative H1 spanned by the closed-curve
    // classes and the arcs joining adjacent boundary components, for a
    // partition given as blocks of boundary indices.
    std::size_t partitioned_span_rank(const std::vector<std::vector<int>> &blocks) const
    {
        std::vector<IntVec> gens;
        for (std::size_t i = 0; i < 2 * g; ++i) {
            IntVec v(2 * g + b, Int(0));
            v[i] = 1;
            gens.push_back(v);
        }
        for (const auto &block : blocks)
            for (std::size_t j = 1; j < block.size(); ++j) {
                // Arc from the block anchor to member j: x_far - x_anchor.
                IntVec v(2 * g + b, Int(0));
                v[2 * g + block[j]] += 1;
                v[2 * g + block[0]] -= 1;
                gens.push_back(v);
            }
        if (gens.empty())
            return 0;
        Mat m = Mat::from_columns(2 * g + b, gens);
        // Check the generators are relative cycles, then take the span rank.
        for (const IntVec &v : gens) {
            IntVec bd = d1 * v;
            if (bd[0] != 0)
                throw std::logic_error("generator is not a relative cycle");
        }
        return torelli::smith_normal_form(m).rank();
    }
};

// All set partitions of {0, ..., n-1}, blocks in first-seen order.
inline std::vector<std::vector<std::vector<int>>> all_partitions(int n)
{
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> cur;
    auto rec = [&](auto &&self, int i) -> void {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (std::size_t k = 0; k < cur.size(); ++k) {
            cur[k].push_back(i);
            self(self, i + 1);
            cur[k].pop_back();
        }
        cur.push_back({i});
        self(self, i + 1);
        cur.pop_back();
    };
    rec(rec, 0);
    return out;
}

} // namespace cw
