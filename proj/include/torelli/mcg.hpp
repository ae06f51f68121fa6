#pragma once

#include "torelli/psurf.hpp"

#include <deque>
#include <unordered_set>

namespace torelli {

/// A curve for twisting, given by its absolute homology class in the
/// (a1, b1, ..., ag, bg, boundary loops) coordinates. Classes are not
/// checked for representability by simple closed curves; arbitrary classes
/// give valid formal symplectic transvections.
struct CurveClass {
    IntVec cls;
    std::string label;
};

/// A mapping class presented as a product of powers of Dehn twists; the
/// leftmost factor acts last.
using TwistWord = std::vector<std::pair<CurveClass, long>>;

/// Action of the right-handed twist about c on partitioned homology:
/// x maps to x + omega(x, c) * j(c), where j is the image of c in the
/// partitioned relative coordinates. Boundary twists act as the identity.
inline Mat twist_action(const CurveClass &c, const PartitionedHomology &h)
{
    if (c.cls.size() != h.closed_dim())
        throw std::invalid_argument("curve class dimension mismatch");
    IntVec jc = h.closed_to_partitioned() * c.cls;
    IntVec w = h.pairing() * c.cls; // omega(basis_i, c)
    Mat m = Mat::identity(h.rank());
    for (std::size_t i = 0; i < h.rank(); ++i)
        if (jc[i] != 0)
            for (std::size_t j = 0; j < h.rank(); ++j)
                if (w[j] != 0)
                    m(i, j) += jc[i] * w[j];
    return m;
}

/// Power of a transvection: x maps to x + e * omega(x, c) * j(c).
inline Mat twist_power_action(const CurveClass &c, long e, const PartitionedHomology &h)
{
    if (c.cls.size() != h.closed_dim())
        throw std::invalid_argument("curve class dimension mismatch");
    IntVec jc = h.closed_to_partitioned() * c.cls;
    IntVec w = h.pairing() * c.cls;
    Mat m = Mat::identity(h.rank());
    for (std::size_t i = 0; i < h.rank(); ++i)
        if (jc[i] != 0)
            for (std::size_t j = 0; j < h.rank(); ++j)
                if (w[j] != 0)
                    m(i, j) += Int(e) * jc[i] * w[j];
    return m;
}

inline Mat word_action(const TwistWord &word, const PartitionedHomology &h)
{
    Mat m = Mat::identity(h.rank());
    for (const auto &[c, e] : word)
        m = m * twist_power_action(c, e, h);
    return m;
}

/// Membership in the partial Torelli group: mu after the action equals mu.
inline bool torelli_membership(const TwistWord &word, const Marking &m)
{
    Mat act = word_action(word, m.homology);
    AbHom moved(m.mu.source(), m.mu.target(), m.mu.matrix() * act);
    return moved.equals(m.mu);
}

/// The word with every curve class pushed forward along a morphism.
inline TwistWord pushforward_word(const TwistWord &word, const PSurfMorphism &f)
{
    TwistWord out;
    for (const auto &[c, e] : word)
        out.push_back({CurveClass{f.pushforward() * c.cls, c.label}, e});
    return out;
}

/// Homology classes of the standard 2g+1 twist generators of the mapping
/// class group of a one-boundary surface: the chain a1, b1, a1+a2, b2,
/// a2+a3, b3, ..., b_g, a_g.
inline std::vector<CurveClass> humphries_classes(std::size_t g)
{
    const std::size_t dim = 2 * g + 1;
    std::vector<CurveClass> out;
    auto unit = [&](std::size_t i, const std::string &name) {
        IntVec v(dim, Int(0));
        v[i] = 1;
        return CurveClass{v, name};
    };
    if (g == 0)
        return out;
    out.push_back(unit(0, "a1"));
    out.push_back(unit(1, "b1"));
    for (std::size_t i = 1; i < g; ++i) {
        IntVec v(dim, Int(0));
        v[2 * (i - 1)] = 1;
        v[2 * i] = 1;
        out.push_back(CurveClass{v, "a" + std::to_string(i) + "+a" + std::to_string(i + 1)});
        out.push_back(unit(2 * i + 1, "b" + std::to_string(i + 1)));
    }
    out.push_back(unit(2 * (g - 1), "a" + std::to_string(g)));
    return out;
}

namespace detail {

inline std::string orbit_key(const Mat &mu, const FgAbGroup &a)
{
    std::string key;
    for (std::size_t i = 0; i < mu.rows(); ++i)
        for (std::size_t j = 0; j < mu.cols(); ++j) {
            key += mod_reduce(mu(i, j), a.gen_order(i)).get_str();
            key += ',';
        }
    return key;
}

} // namespace detail

/// Size of the orbit of mu under precomposition by the group generated by
/// the given twist words (closed under inverses internally). Equals the
/// index of the partial Torelli group when the generators generate the
/// image of the mapping class group. Finite coefficients required.
inline Int orbit_index(const Marking &m, const std::vector<TwistWord> &gens)
{
    if (!m.coefficients().is_finite())
        throw std::domain_error("orbit enumeration requires finite coefficients");
    const PartitionedHomology &h = m.homology;
    const FgAbGroup &a = m.coefficients();

    std::vector<Mat> actions;
    for (const TwistWord &w : gens) {
        actions.push_back(word_action(w, h));
        TwistWord inv;
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            inv.push_back({it->first, -it->second});
        actions.push_back(word_action(inv, h));
    }

    std::unordered_set<std::string> seen;
    std::deque<Mat> frontier;
    frontier.push_back(m.mu.matrix());
    seen.insert(detail::orbit_key(m.mu.matrix(), a));
    while (!frontier.empty()) {
        Mat cur = std::move(frontier.front());
        frontier.pop_front();
        for (const Mat &act : actions) {
            Mat next = cur * act;
            std::string key = detail::orbit_key(next, a);
            if (seen.insert(std::move(key)).second)
                frontier.push_back(std::move(next));
        }
    }
    return Int(static_cast<unsigned long>(seen.size()));
}

/// Canonical twist words (single twists) about the standard generators.
inline std::vector<TwistWord> humphries_words(std::size_t g)
{
    std::vector<TwistWord> out;
    for (const CurveClass &c : humphries_classes(g))
        out.push_back(TwistWord{{c, 1}});
    return out;
}

} // namespace torelli
