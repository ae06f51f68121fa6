#pragma once

#include "torelli/abgroup.hpp"

#include <map>
#include <set>
#include <string>

namespace torelli {

using Simplex = std::vector<int>; // sorted distinct vertices

inline Simplex normalize_simplex(Simplex s)
{
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

/// Finite simplicial complex: a downward-closed family of sorted vertex
/// lists. Construction closes the family under faces.
class SimplicialComplexFin {
  public:
    SimplicialComplexFin() = default;

    static SimplicialComplexFin from_simplices(const std::vector<Simplex> &list)
    {
        SimplicialComplexFin x;
        for (const Simplex &raw : list) {
            Simplex s = normalize_simplex(raw);
            if (s.empty())
                throw std::invalid_argument("empty simplex");
            // Insert every nonempty subset.
            std::size_t n = s.size();
            for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
                Simplex face;
                for (std::size_t i = 0; i < n; ++i)
                    if (mask & (std::size_t(1) << i))
                        face.push_back(s[i]);
                x.simplices_.insert(face);
            }
        }
        return x;
    }

    const std::set<Simplex> &simplices() const { return simplices_; }
    bool contains(const Simplex &s) const { return simplices_.count(normalize_simplex(s)) > 0; }
    bool empty() const { return simplices_.empty(); }
    std::size_t size() const { return simplices_.size(); }

    int dim() const
    {
        int d = -1;
        for (const Simplex &s : simplices_)
            d = std::max<int>(d, static_cast<int>(s.size()) - 1);
        return d;
    }

    std::vector<Simplex> simplices_of_dim(int k) const
    {
        std::vector<Simplex> out;
        for (const Simplex &s : simplices_)
            if (static_cast<int>(s.size()) == k + 1)
                out.push_back(s);
        return out;
    }

    /// Boundary matrix from k-chains to (k-1)-chains; for k = 0 the
    /// augmentation onto Z.
    Mat boundary_matrix(int k) const
    {
        std::vector<Simplex> rows = k == 0 ? std::vector<Simplex>{} : simplices_of_dim(k - 1);
        std::vector<Simplex> cols = simplices_of_dim(k);
        if (k == 0) {
            Mat m(1, cols.size());
            for (std::size_t j = 0; j < cols.size(); ++j)
                m(0, j) = 1;
            return m;
        }
        std::map<Simplex, std::size_t> index;
        for (std::size_t i = 0; i < rows.size(); ++i)
            index[rows[i]] = i;
        Mat m(rows.size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const Simplex &s = cols[j];
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex face = s;
                face.erase(face.begin() + static_cast<long>(i));
                m(index.at(face), j) += (i % 2 == 0) ? 1 : -1;
            }
        }
        return m;
    }

    /// Reduced integral homology in degrees 0..up_to.
    std::vector<FgAbGroup> reduced_homology(int up_to) const
    {
        std::vector<FgAbGroup> out;
        for (int k = 0; k <= up_to; ++k) {
            Mat dk = boundary_matrix(k);
            Mat dk1 = boundary_matrix(k + 1);
            std::size_t nk = simplices_of_dim(k).size();
            SmithDecomposition sk = smith_normal_form(dk);
            SmithDecomposition sk1 = smith_normal_form(dk1);
            std::size_t rk = empty() && k == 0 ? 0 : sk.rank();
            std::size_t rk1 = sk1.rank();
            std::size_t betti = nk - rk - rk1;
            IntVec torsion;
            for (std::size_t i = 0; i < rk1; ++i)
                if (sk1.d(i, i) > 1)
                    torsion.push_back(sk1.d(i, i));
            out.push_back(FgAbGroup(betti, torsion));
        }
        return out;
    }

    /// Homological n-connectivity: nonempty with vanishing reduced homology
    /// in degrees 0..n. n = -1 asks only for nonemptiness.
    bool homologically_connected(int n) const
    {
        if (empty())
            return false;
        if (n < 0)
            return true;
        for (const FgAbGroup &h : reduced_homology(n))
            if (!h.is_trivial())
                return false;
        return true;
    }

  private:
    std::set<Simplex> simplices_;
};

/// The boundary of the n-simplex on vertices 0..n.
inline SimplicialComplexFin simplex_boundary(int n)
{
    std::vector<Simplex> facets;
    for (int drop = 0; drop <= n; ++drop) {
        Simplex s;
        for (int v = 0; v <= n; ++v)
            if (v != drop)
                s.push_back(v);
        facets.push_back(s);
    }
    return SimplicialComplexFin::from_simplices(facets);
}

/// Finite semisimplicial complex: abstract k-simplices with face maps
/// d_0, ..., d_k into dimension k-1, satisfying d_i d_j = d_{j-1} d_i for
/// i < j. Checked at construction.
class SemiSimplicialComplex {
  public:
    /// faces[k][s][i] = index of the i-th face of the s-th (k+1)-simplex in
    /// dimension k. counts[k] = number of k-simplices; faces has one entry
    /// per dimension >= 1.
    SemiSimplicialComplex(std::vector<std::size_t> counts,
                          std::vector<std::vector<std::vector<std::size_t>>> faces)
        : counts_(std::move(counts)), faces_(std::move(faces))
    {
        if (faces_.size() + 1 < counts_.size())
            throw std::invalid_argument("missing face maps");
        for (std::size_t k = 1; k < counts_.size(); ++k) {
            const auto &fk = faces_[k - 1];
            if (fk.size() != counts_[k])
                throw std::invalid_argument("face table size mismatch");
            for (const auto &row : fk) {
                if (row.size() != k + 1)
                    throw std::invalid_argument("a k-simplex needs k+1 faces");
                for (std::size_t idx : row)
                    if (idx >= counts_[k - 1])
                        throw std::invalid_argument("face index out of range");
            }
        }
        // Semisimplicial identities.
        for (std::size_t k = 2; k < counts_.size(); ++k)
            for (std::size_t s = 0; s < counts_[k]; ++s)
                for (std::size_t j = 1; j <= k; ++j)
                    for (std::size_t i = 0; i < j; ++i) {
                        std::size_t lhs = face(k - 1, face(k, s, j), i);
                        std::size_t rhs = face(k - 1, face(k, s, i), j - 1);
                        if (lhs != rhs)
                            throw std::invalid_argument("face maps violate the identities");
                    }
    }

    std::size_t dimension_count(std::size_t k) const
    {
        return k < counts_.size() ? counts_[k] : 0;
    }
    int dim() const { return static_cast<int>(counts_.size()) - 1; }

    std::size_t face(std::size_t k, std::size_t s, std::size_t i) const
    {
        return faces_.at(k - 1).at(s).at(i);
    }

    Mat boundary_matrix(int k) const
    {
        if (k == 0) {
            Mat m(1, dimension_count(0));
            for (std::size_t j = 0; j < m.cols(); ++j)
                m(0, j) = 1;
            return m;
        }
        Mat m(dimension_count(k - 1), dimension_count(k));
        for (std::size_t s = 0; s < dimension_count(k); ++s)
            for (std::size_t i = 0; i <= static_cast<std::size_t>(k); ++i)
                m(face(k, s, i), s) += (i % 2 == 0) ? 1 : -1;
        return m;
    }

    std::vector<FgAbGroup> reduced_homology(int up_to) const
    {
        std::vector<FgAbGroup> out;
        bool is_empty = dimension_count(0) == 0;
        for (int k = 0; k <= up_to; ++k) {
            Mat dk = boundary_matrix(k);
            Mat dk1 = boundary_matrix(k + 1);
            std::size_t nk = dimension_count(k);
            std::size_t rk = (is_empty && k == 0) ? 0 : smith_normal_form(dk).rank();
            SmithDecomposition sk1 = smith_normal_form(dk1);
            std::size_t rk1 = sk1.rank();
            IntVec torsion;
            for (std::size_t i = 0; i < rk1; ++i)
                if (sk1.d(i, i) > 1)
                    torsion.push_back(sk1.d(i, i));
            out.push_back(FgAbGroup(nk - rk - rk1, torsion));
        }
        return out;
    }

  private:
    std::vector<std::size_t> counts_;
    std::vector<std::vector<std::vector<std::size_t>>> faces_;
};

/// The semisimplicial structure underlying a finite simplicial complex,
/// ordering each simplex's vertices increasingly.
inline SemiSimplicialComplex to_semisimplicial(const SimplicialComplexFin &x)
{
    int d = x.dim();
    std::vector<std::size_t> counts;
    std::vector<std::vector<std::vector<std::size_t>>> faces;
    std::vector<std::map<Simplex, std::size_t>> index(d + 1);
    for (int k = 0; k <= d; ++k) {
        auto sk = x.simplices_of_dim(k);
        counts.push_back(sk.size());
        for (std::size_t i = 0; i < sk.size(); ++i)
            index[k][sk[i]] = i;
        if (k >= 1) {
            std::vector<std::vector<std::size_t>> fk(sk.size());
            for (std::size_t s = 0; s < sk.size(); ++s)
                for (std::size_t i = 0; i <= static_cast<std::size_t>(k); ++i) {
                    Simplex face = sk[s];
                    face.erase(face.begin() + static_cast<long>(i));
                    fk[s].push_back(index[k - 1].at(face));
                }
            faces.push_back(std::move(fk));
        }
    }
    return SemiSimplicialComplex(std::move(counts), std::move(faces));
}

/// Simplicial map between finite complexes, given on vertices. Simplices
/// may collapse; their vertex-set image must be a simplex of the codomain.
struct SimplicialMap {
    SimplicialComplexFin domain;
    SimplicialComplexFin codomain;
    std::map<int, int> vertex_map;

    Simplex image(const Simplex &s) const
    {
        Simplex out;
        for (int v : s)
            out.push_back(vertex_map.at(v));
        return normalize_simplex(out);
    }

    void validate() const
    {
        for (const Simplex &s : domain.simplices()) {
            for (int v : s)
                if (!vertex_map.count(v))
                    throw std::invalid_argument("vertex without image");
            if (!codomain.contains(image(s)))
                throw std::invalid_argument("simplex image is not a simplex");
        }
    }
};

/// The relative fiber over a face sp of a simplex sg: all simplices of the
/// domain whose image is a face of sp and which extend to a simplex mapping
/// onto sg.
inline SimplicialComplexFin relative_fiber(const SimplicialMap &psi, const Simplex &sp_in,
                                           const Simplex &sg_in)
{
    Simplex sp = normalize_simplex(sp_in), sg = normalize_simplex(sg_in);
    if (!psi.codomain.contains(sg))
        throw std::invalid_argument("simplex is not in the codomain");
    if (!std::includes(sg.begin(), sg.end(), sp.begin(), sp.end()))
        throw std::invalid_argument("first simplex must be a face of the second");
    std::vector<Simplex> keep;
    for (const Simplex &eta : psi.domain.simplices()) {
        if (psi.image(eta) != sg)
            continue;
        std::size_t n = eta.size();
        for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
            Simplex face;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (std::size_t(1) << i))
                    face.push_back(eta[i]);
            Simplex img = psi.image(face);
            if (std::includes(sp.begin(), sp.end(), img.begin(), img.end()))
                keep.push_back(face);
        }
    }
    return SimplicialComplexFin::from_simplices(keep);
}

/// The link-type complex of a bad simplex: simplices sp joinable to sg such
/// that every bad face of the join lies inside sg.
inline SimplicialComplexFin bad_simplex_link(const SimplicialComplexFin &x, const Simplex &sg_in,
                                             const std::set<Simplex> &bad)
{
    Simplex sg = normalize_simplex(sg_in);
    if (!bad.count(sg))
        throw std::invalid_argument("the simplex must itself be bad");
    if (!x.contains(sg))
        throw std::invalid_argument("simplex not in the complex");
    std::vector<Simplex> keep;
    for (const Simplex &sp : x.simplices()) {
        // Disjointness and join condition.
        Simplex join;
        std::set_union(sg.begin(), sg.end(), sp.begin(), sp.end(), std::back_inserter(join));
        if (join.size() != sg.size() + sp.size())
            continue;
        if (!x.contains(join))
            continue;
        bool ok = true;
        std::size_t n = join.size();
        for (std::size_t mask = 1; mask < (std::size_t(1) << n) && ok; ++mask) {
            Simplex face;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (std::size_t(1) << i))
                    face.push_back(join[i]);
            if (bad.count(face) &&
                !std::includes(sg.begin(), sg.end(), face.begin(), face.end()))
                ok = false;
        }
        if (ok)
            keep.push_back(sp);
    }
    return SimplicialComplexFin::from_simplices(keep);
}

/// Statement-level check of the fiber criterion: hypotheses ask every
/// relative fiber (over simplices of dimension <= max checked) to be
/// homologically n-connected; the conclusion compares reduced homology of
/// domain and codomain through degree n (or, in corollary mode, asks the
/// domain to be homologically n-connected given a codomain that is).
/// Hypothesis failures are reported separately and leave the conclusion
/// unasserted.
struct FiberCheckReport {
    int n = 0;
    bool corollary_mode = false;
    bool hypotheses_hold = false;
    std::vector<std::string> hypothesis_failures;
    bool conclusion_checked = false;
    bool conclusion_holds = false;
    std::vector<std::string> conclusion_failures;
    /// What the conclusion asserts; always a homological statement (the
    /// homotopical version is not tested here).
    std::string conclusion_statement;
};

inline std::string simplex_name(const Simplex &s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

inline FiberCheckReport check_fiber_lemma_instance(const SimplicialMap &psi, int n,
                                                   bool corollary_mode = false)
{
    psi.validate();
    FiberCheckReport rep;
    rep.n = n;
    rep.corollary_mode = corollary_mode;
    rep.conclusion_statement =
        corollary_mode
            ? "homological " + std::to_string(n) + "-connectivity of the domain"
            : "reduced homology of domain and codomain agree through degree " +
                  std::to_string(n) + " (homological, not homotopical)";
    rep.hypotheses_hold = true;

    if (corollary_mode) {
        if (!psi.codomain.homologically_connected(n)) {
            rep.hypotheses_hold = false;
            rep.hypothesis_failures.push_back("codomain is not homologically n-connected");
        }
        // Every (n+1)-simplex of the codomain must be hit.
        for (const Simplex &sg : psi.codomain.simplices_of_dim(n + 1)) {
            bool hit = false;
            for (const Simplex &eta : psi.domain.simplices())
                if (psi.image(eta) == sg) {
                    hit = true;
                    break;
                }
            if (!hit) {
                rep.hypotheses_hold = false;
                rep.hypothesis_failures.push_back("simplex " + simplex_name(sg) +
                                                  " is not in the image");
            }
        }
    }

    for (const Simplex &sg : psi.codomain.simplices()) {
        if (corollary_mode && static_cast<int>(sg.size()) - 1 > n)
            continue;
        std::size_t m = sg.size();
        for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
            Simplex sp;
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (std::size_t(1) << i))
                    sp.push_back(sg[i]);
            SimplicialComplexFin fib = relative_fiber(psi, sp, sg);
            if (!fib.homologically_connected(n)) {
                rep.hypotheses_hold = false;
                rep.hypothesis_failures.push_back("fiber over (" + simplex_name(sp) + ", " +
                                                  simplex_name(sg) +
                                                  ") is not homologically n-connected");
            }
        }
    }

    if (!rep.hypotheses_hold)
        return rep;

    rep.conclusion_checked = true;
    rep.conclusion_holds = true;
    if (corollary_mode) {
        if (!psi.domain.homologically_connected(n)) {
            rep.conclusion_holds = false;
            rep.conclusion_failures.push_back("domain is not homologically n-connected");
        }
    }
    else {
        if (psi.domain.empty() != psi.codomain.empty()) {
            rep.conclusion_holds = false;
            rep.conclusion_failures.push_back("emptiness mismatch");
        }
        std::vector<FgAbGroup> hx = psi.domain.reduced_homology(n);
        std::vector<FgAbGroup> hy = psi.codomain.reduced_homology(n);
        for (int k = 0; k <= n; ++k)
            if (!(hx[k] == hy[k])) {
                rep.conclusion_holds = false;
                rep.conclusion_failures.push_back("reduced homology differs in degree " +
                                                  std::to_string(k));
            }
    }
    return rep;
}

} // namespace torelli
