#pragma once

#include "torelli/surface.hpp"

#include <algorithm>
#include <map>

namespace torelli {

/// One attachment: a connected genus-h piece with |glued| + |new_boundary|
/// boundary components, glued along the `glued` components of the source
/// (all in a single partition block). The target replaces that block by
/// (block minus glued) followed by the new components; the new genus is
/// source genus + h + (|glued| - 1).
struct ElementaryAttachment {
    std::size_t piece_genus = 0;
    std::vector<std::string> glued;
    std::vector<std::string> new_boundary;
};

enum class StepKind {
    increasing_boundary_stab,
    decreasing_boundary_stab,
    double_boundary_stab,
    disc_cap,
    annulus,
    genus_stab,
    general,
};

inline const char *to_string(StepKind k)
{
    switch (k) {
    case StepKind::increasing_boundary_stab: return "increasing_boundary_stab";
    case StepKind::decreasing_boundary_stab: return "decreasing_boundary_stab";
    case StepKind::double_boundary_stab: return "double_boundary_stab";
    case StepKind::disc_cap: return "disc_cap";
    case StepKind::annulus: return "annulus";
    case StepKind::genus_stab: return "genus_stab";
    case StepKind::general: return "general";
    }
    return "general";
}

inline StepKind classify(const ElementaryAttachment &step)
{
    const std::size_t h = step.piece_genus, k = step.glued.size(), m = step.new_boundary.size();
    if (h == 0 && k == 1 && m == 2)
        return StepKind::increasing_boundary_stab;
    if (h == 0 && k == 2 && m == 1)
        return StepKind::decreasing_boundary_stab;
    if (h == 0 && k == 2 && m == 2)
        return StepKind::double_boundary_stab;
    if (h == 0 && k == 1 && m == 0)
        return StepKind::disc_cap;
    if (h == 0 && k == 1 && m == 1)
        return StepKind::annulus;
    if (h >= 1 && k == 1 && m == 1)
        return StepKind::genus_stab;
    return StepKind::general;
}

namespace detail {

struct StepData {
    PartitionedSurface target;
    Mat restriction; // H1^P(target) -> H1^P(source), N_src x N_tgt
    Mat pushforward; // absolute H1(source) -> absolute H1(target)
};

/// Applies one attachment to a source surface, producing the canonical
/// target together with the basis transport of the induced contravariant
/// map and the covariant pushforward on absolute homology.
inline StepData apply_step(const PartitionedSurface &src, const ElementaryAttachment &step)
{
    src.validate();
    if (step.glued.empty())
        throw std::invalid_argument("attachment must glue along at least one component");
    std::set<std::string> glued_set(step.glued.begin(), step.glued.end());
    if (glued_set.size() != step.glued.size())
        throw std::invalid_argument("duplicate glued component");
    const std::size_t block_idx = src.block_of(step.glued.front());
    for (const std::string &gname : step.glued)
        if (src.block_of(gname) != block_idx)
            throw std::invalid_argument("glued components must lie in a single block");
    for (const std::string &nname : step.new_boundary) {
        for (const std::string &bname : src.boundary)
            if (bname == nname)
                throw std::invalid_argument("new boundary label already in use: " + nname);
    }
    {
        std::set<std::string> new_set(step.new_boundary.begin(), step.new_boundary.end());
        if (new_set.size() != step.new_boundary.size())
            throw std::invalid_argument("duplicate new boundary label");
    }

    const std::size_t g = src.genus, h = step.piece_genus, k = step.glued.size();
    const auto &block = src.partition[block_idx];

    // Glued components keep their given order; the first one anchors every
    // route through the attached piece.
    const std::vector<std::string> &glued_ordered = step.glued;

    PartitionedSurface tgt;
    tgt.genus = g + h + (k - 1);
    for (const std::string &bname : src.boundary)
        if (!glued_set.count(bname))
            tgt.boundary.push_back(bname);
    for (const std::string &nname : step.new_boundary)
        tgt.boundary.push_back(nname);
    std::size_t reshaped_block = static_cast<std::size_t>(-1);
    for (std::size_t p = 0; p < src.partition.size(); ++p) {
        if (p != block_idx) {
            tgt.partition.push_back(src.partition[p]);
            continue;
        }
        std::vector<std::string> nb;
        for (const std::string &bname : block)
            if (!glued_set.count(bname))
                nb.push_back(bname);
        for (const std::string &nname : step.new_boundary)
            nb.push_back(nname);
        if (!nb.empty()) {
            reshaped_block = tgt.partition.size();
            tgt.partition.push_back(nb);
        }
    }

    PartitionedHomology hsrc(src), htgt(tgt);

    // --- Contravariant restriction on partitioned homology. ---
    // Handle order in the target: source handles, then piece handles, then
    // one connecting pair per extra glued component (its a-vector crosses
    // the piece between the anchor circle and the j-th glued circle; its
    // b-vector is that circle itself, which is trivial relative to the
    // boundary).
    Mat r(hsrc.rank(), htgt.rank());
    for (std::size_t i = 0; i < 2 * g; ++i)
        r(i, i) = 1;

    // Class in H1^P(src) of an arc routed from x to y inside the block:
    // delta_y - delta_x with delta_anchor = 0.
    auto src_arc_class = [&](const std::string &from, const std::string &to) {
        IntVec v(hsrc.rank(), Int(0));
        auto add_delta = [&](const std::string &far, const Int &c) {
            std::size_t far_idx = src.boundary_index(far);
            for (std::size_t a = 0; a < hsrc.arcs().size(); ++a)
                if (hsrc.arcs()[a].block == block_idx && hsrc.arcs()[a].far == far_idx) {
                    v[hsrc.arc_index(a)] += c;
                    return;
                }
            // far == anchor contributes nothing
        };
        add_delta(to, Int(1));
        add_delta(from, Int(-1));
        return v;
    };

    for (std::size_t j = 2; j <= k; ++j) {
        std::size_t a_col = 2 * (g + h) + 2 * (j - 2);
        IntVec arc = src_arc_class(glued_ordered[0], glued_ordered[j - 1]);
        for (std::size_t i = 0; i < hsrc.rank(); ++i)
            r(i, a_col) = arc[i];
        // b-column (a_col + 1) stays zero.
    }

    // Arcs of the target: untouched blocks restrict identically; arcs of
    // the reshaped block route new endpoints through the first glued circle.
    auto route = [&](std::size_t tgt_boundary_idx) -> std::string {
        const std::string &name = tgt.boundary[tgt_boundary_idx];
        for (const std::string &nname : step.new_boundary)
            if (nname == name)
                return glued_ordered[0];
        return name;
    };
    for (std::size_t a = 0; a < htgt.arcs().size(); ++a) {
        const auto &arc = htgt.arcs()[a];
        const std::string &anchor_name = tgt.boundary[arc.anchor];
        const std::string &far_name = tgt.boundary[arc.far];
        std::size_t col = htgt.arc_index(a);
        if (arc.block != reshaped_block) {
            // Untouched block: the same arc exists in the source basis.
            std::size_t far_idx = src.boundary_index(far_name);
            std::size_t src_block = src.block_of(anchor_name);
            for (std::size_t sa = 0; sa < hsrc.arcs().size(); ++sa)
                if (hsrc.arcs()[sa].block == src_block && hsrc.arcs()[sa].far == far_idx)
                    r(hsrc.arc_index(sa), col) = 1;
        }
        else {
            IntVec v = src_arc_class(route(arc.anchor), route(arc.far));
            for (std::size_t i = 0; i < hsrc.rank(); ++i)
                r(i, col) = v[i];
        }
    }

    // --- Covariant pushforward on absolute homology. ---
    Mat psi(htgt.closed_dim(), hsrc.closed_dim());
    for (std::size_t i = 0; i < 2 * g; ++i)
        psi(i, i) = 1;
    for (std::size_t j = 0; j < src.boundary.size(); ++j) {
        const std::string &name = src.boundary[j];
        std::size_t src_col = 2 * g + j;
        if (!glued_set.count(name)) {
            psi(2 * tgt.genus + tgt.boundary_index(name), src_col) = 1;
        }
    }
    // Glued circles beyond the first become the b-vectors of the connecting
    // pairs; the first is minus the sum of everything else on the source
    // side (the whole source boundary bounds the source inside the target).
    for (std::size_t j = 2; j <= k; ++j) {
        std::size_t b_row = 2 * (g + h) + 2 * (j - 2) + 1;
        std::size_t src_col = 2 * g + src.boundary_index(glued_ordered[j - 1]);
        psi(b_row, src_col) = 1;
    }
    {
        std::size_t src_col = 2 * g + src.boundary_index(glued_ordered[0]);
        for (std::size_t j = 0; j < src.boundary.size(); ++j) {
            const std::string &name = src.boundary[j];
            if (!glued_set.count(name))
                psi(2 * tgt.genus + tgt.boundary_index(name), src_col) -= 1;
        }
        for (std::size_t j = 2; j <= k; ++j)
            psi(2 * (g + h) + 2 * (j - 2) + 1, src_col) -= 1;
    }

    return StepData{std::move(tgt), std::move(r), std::move(psi)};
}

} // namespace detail

/// A PSurf morphism: a composition of elementary attachments. Stage
/// surfaces, the contravariant restriction and the covariant pushforward
/// are computed once at construction.
class PSurfMorphism {
  public:
    PSurfMorphism(PartitionedSurface source, std::vector<ElementaryAttachment> steps)
        : source_(std::move(source)), steps_(std::move(steps))
    {
        source_.validate();
        stages_.push_back(source_);
        PartitionedHomology h0(source_);
        restriction_ = Mat::identity(h0.rank());
        pushforward_ = Mat::identity(h0.closed_dim());
        for (const ElementaryAttachment &step : steps_) {
            detail::StepData d = detail::apply_step(stages_.back(), step);
            restriction_ = restriction_ * d.restriction;
            pushforward_ = d.pushforward * pushforward_;
            stages_.push_back(std::move(d.target));
        }
    }

    const PartitionedSurface &source() const { return source_; }
    const PartitionedSurface &target() const { return stages_.back(); }
    const std::vector<ElementaryAttachment> &steps() const { return steps_; }
    const std::vector<PartitionedSurface> &stages() const { return stages_; }

    /// Matrix of the induced contravariant map on partitioned homology,
    /// taking target coordinates to source coordinates.
    const Mat &restriction() const { return restriction_; }

    /// Matrix of the covariant map on absolute homology (curve classes of
    /// the source viewed in the target).
    const Mat &pushforward() const { return pushforward_; }

  private:
    PartitionedSurface source_;
    std::vector<ElementaryAttachment> steps_;
    std::vector<PartitionedSurface> stages_;
    Mat restriction_;
    Mat pushforward_;
};

/// The induced map as a homomorphism between the partitioned homology
/// lattices (contravariant: from the target's to the source's).
inline AbHom induced_map(const PSurfMorphism &f)
{
    PartitionedHomology hs(f.source()), ht(f.target());
    return AbHom(ht.group(), hs.group(), f.restriction());
}

/// Partition-bijectivity of the composite embedding: for each source block
/// p, the closure of the complement regions touching p must meet the target
/// boundary in exactly one block of the target partition. Rejects both
/// failure modes (a block capped away entirely, and -- impossible for
/// composites of elementary attachments but checked anyway -- a block
/// splitting into several target blocks).
namespace detail {

/// Connected components of the complement of the source in the target,
/// obtained by merging attached pieces that share a gluing circle. For each
/// region: the source components it swallows, the target components it
/// exposes, and its Euler characteristic.
struct Region {
    std::set<std::string> source_comps;
    std::set<std::string> out_comps;
    Int euler = 0;
};

inline std::vector<Region> complement_regions(const PSurfMorphism &f)
{
    const auto &steps = f.steps();
    const std::size_t n = steps.size();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i)
        parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](std::size_t x, std::size_t y) { parent[find(x)] = find(y); };

    std::map<std::string, std::size_t> created_by;
    std::set<std::string> source_labels(f.source().boundary.begin(), f.source().boundary.end());
    for (std::size_t i = 0; i < n; ++i) {
        for (const std::string &nname : steps[i].new_boundary)
            created_by[nname] = i;
        for (const std::string &gname : steps[i].glued) {
            auto it = created_by.find(gname);
            if (it != created_by.end())
                unite(i, it->second);
        }
    }

    std::set<std::string> target_labels(f.target().boundary.begin(), f.target().boundary.end());
    std::map<std::size_t, Region> by_root;
    for (std::size_t i = 0; i < n; ++i) {
        Region &r = by_root[find(i)];
        for (const std::string &gname : steps[i].glued)
            if (source_labels.count(gname))
                r.source_comps.insert(gname);
        for (const std::string &nname : steps[i].new_boundary)
            if (target_labels.count(nname))
                r.out_comps.insert(nname);
        r.euler += Int(2) - Int(2 * steps[i].piece_genus) -
                   Int(steps[i].glued.size() + steps[i].new_boundary.size());
    }
    std::vector<Region> out;
    for (auto &[root, r] : by_root)
        out.push_back(std::move(r));
    return out;
}

} // namespace detail

inline bool is_partition_bijective(const PSurfMorphism &f)
{
    std::vector<detail::Region> regions = detail::complement_regions(f);
    std::set<std::string> target_labels(f.target().boundary.begin(), f.target().boundary.end());

    for (const auto &block : f.source().partition) {
        std::set<std::string> meets; // = S_p intersected with the target boundary
        for (const std::string &bname : block) {
            if (target_labels.count(bname))
                meets.insert(bname); // survives as its own degenerate circle
        }
        for (const detail::Region &r : regions) {
            bool touches = false;
            for (const std::string &bname : block)
                if (r.source_comps.count(bname))
                    touches = true;
            if (touches)
                for (const std::string &nname : r.out_comps)
                    meets.insert(nname);
        }
        if (meets.empty())
            return false;
        bool matches_block = false;
        for (const auto &tblock : f.target().partition) {
            std::set<std::string> tset(tblock.begin(), tblock.end());
            if (tset == meets) {
                matches_block = true;
                break;
            }
        }
        if (!matches_block)
            return false;
    }
    return true;
}

/// Stabilization of a marking along a morphism: mu' = mu after restriction.
inline Marking stabilize_marking(const Marking &m, const PSurfMorphism &f)
{
    if (m.homology.surface() != f.source())
        throw std::invalid_argument("marking does not live on the morphism source");
    PartitionedHomology ht(f.target());
    Mat mu2 = m.mu.matrix() * f.restriction();
    return Marking(ht, AbHom(ht.group(), m.coefficients(), mu2));
}

struct DestabilizeResult {
    bool ok = false;
    std::optional<Marking> marking;      // on the source, when ok
    std::optional<IntVec> violating_class; // target H1^P class killed by the
                                           // restriction on which mu is nonzero
};

/// Solve mu = mu' after restriction for mu' on the source. Succeeds exactly
/// when mu vanishes on every class supported on the complement (the kernel
/// of the restriction); on failure a violating kernel class is reported.
inline DestabilizeResult destabilize_marking(const Marking &m, const PSurfMorphism &f)
{
    if (m.homology.surface() != f.target())
        throw std::invalid_argument("marking does not live on the morphism target");
    const Mat &r = f.restriction(); // N_src x N_tgt
    const Mat &mu = m.mu.matrix();  // A x N_tgt
    const FgAbGroup &a = m.coefficients();

    SmithDecomposition s = smith_normal_form(r);
    Mat rhs = mu * s.v;                 // A x N_tgt, columns against diagonalized r
    const std::size_t nsrc = r.rows(), ntgt = r.cols();
    Mat w(mu.rows(), nsrc);
    for (std::size_t j = 0; j < ntgt; ++j) {
        Int dj = j < std::min(nsrc, ntgt) ? s.d(j, j) : Int(0);
        if (dj == 0) {
            // Kernel direction of the restriction: mu must die on it.
            if (!a.is_zero_element(rhs.column(j)))
                return DestabilizeResult{false, std::nullopt, s.v.column(j)};
            continue;
        }
        for (std::size_t i = 0; i < mu.rows(); ++i) {
            const Int &oi = a.gen_order(i);
            Int rij = rhs(i, j);
            if (oi == 0) {
                if (!divides(dj, rij))
                    return DestabilizeResult{false, std::nullopt, s.v.column(j)};
                w(i, j) = rij / dj;
            }
            else {
                Int g0 = gcd(dj, oi);
                if (!divides(g0, rij))
                    return DestabilizeResult{false, std::nullopt, s.v.column(j)};
                // Solve dj * x = rij mod oi.
                Int oo = oi / g0;
                Int dd = mod_reduce(dj / g0, oo);
                Int inv;
                if (oo == 1)
                    inv = 0;
                else if (mpz_invert(inv.get_mpz_t(), dd.get_mpz_t(), oo.get_mpz_t()) == 0)
                    return DestabilizeResult{false, std::nullopt, s.v.column(j)};
                w(i, j) = mod_reduce((rij / g0) * inv, oo);
            }
        }
    }
    Mat nu = w * s.u;
    PartitionedHomology hs(f.source());
    Marking out(hs, AbHom(hs.group(), a, nu));
    return DestabilizeResult{true, std::move(out), std::nullopt};
}

/// Kernel generators of the restriction: target classes supported on the
/// complement of the source.
inline Mat complement_supported_classes(const PSurfMorphism &f)
{
    return kernel_basis(f.restriction());
}

/// Separate criterion from the destabilization theory: when cutting along
/// the glued circles q of a single attachment, symplectic support descends
/// iff the closed q-intersection map carries ker(mu-hat) onto the zero-sum
/// lattice of q. The circles' absolute classes in the target are read off
/// the pushforward.
inline bool descends_symplectic_support(const Marking &m, const PSurfMorphism &f,
                                        std::size_t step_index)
{
    if (m.homology.surface() != f.target())
        throw std::invalid_argument("marking does not live on the morphism target");
    if (step_index >= f.steps().size())
        throw std::invalid_argument("no such step");
    // Classes of the glued circles in the final target: push the source
    // boundary loops of that stage forward through the remaining steps.
    PartitionedHomology hstage(f.stages()[step_index]);
    Mat push = Mat::identity(hstage.closed_dim());
    for (std::size_t i = step_index; i < f.steps().size(); ++i) {
        detail::StepData d = detail::apply_step(f.stages()[i], f.steps()[i]);
        push = d.pushforward * push;
    }
    std::vector<IntVec> q;
    for (const std::string &gname : f.steps()[step_index].glued)
        q.push_back(push * hstage.boundary_loop(gname));

    ClosedMarking hat = closed_marking(m);
    KernelResult k = kernel(hat.hat_mu);
    PartitionedHomology ht(f.target());
    // hisect_q on the kernel generators, in zero-sum coordinates
    // (coefficient of each circle after the first, relative to the first).
    if (q.size() <= 1)
        return true; // zero-sum lattice of a single circle is trivial
    Mat img(q.size() - 1, k.inclusion.matrix().cols());
    for (std::size_t c = 0; c < k.inclusion.matrix().cols(); ++c) {
        IntVec x = ht.closed_to_partitioned() * k.inclusion.matrix().column(c);
        IntVec coeffs = ht.isect(q, x);
        Int total = 0;
        for (const Int &v : coeffs)
            total += v;
        if (total != 0)
            return false; // outside the zero-sum lattice; cannot span it
        for (std::size_t i = 1; i < q.size(); ++i)
            img(i - 1, c) = coeffs[i];
    }
    return spans_full_lattice(img);
}

namespace detail {

inline std::string fresh_label(std::size_t &counter)
{
    return "_t" + std::to_string(counter++);
}

} // namespace detail

/// Whether the morphism is an open capping: the target partition is
/// discrete and each non-singleton source block is swallowed by a single
/// connected complement region meeting the target boundary in one component.
inline bool is_open_capping(const PSurfMorphism &f)
{
    for (const auto &tblock : f.target().partition)
        if (tblock.size() != 1)
            return false;
    if (!is_partition_bijective(f))
        return false;
    // Partition-bijectivity plus a discrete target partition already pins
    // each block's complement to a single target component; connectedness of
    // the region needs every non-surviving block to avoid stray survivors.
    std::set<std::string> target_labels(f.target().boundary.begin(), f.target().boundary.end());
    for (const auto &block : f.source().partition) {
        std::size_t surviving = 0;
        for (const std::string &bname : block)
            if (target_labels.count(bname))
                ++surviving;
        if (surviving > 0 && !(block.size() == 1 && surviving == 1))
            return false;
    }
    return true;
}

/// Factor an open capping into increasing and decreasing boundary
/// stabilizations. Annulus steps are eliminated first (they only rename a
/// component; the eliminated label keeps its source name, which affects no
/// arc classes because such components sit in singleton blocks of the
/// discrete target partition). The returned steps compose from f's source
/// to a target equal to f's up to those renames, with an identical induced
/// matrix.
inline std::vector<ElementaryAttachment> factor_open_capping(const PSurfMorphism &f)
{
    if (!is_open_capping(f))
        throw std::invalid_argument("morphism is not an open capping");

    // Eliminate annuli by renaming their output back to their input.
    std::map<std::string, std::string> rename;
    auto resolve = [&](std::string name) {
        while (rename.count(name))
            name = rename[name];
        return name;
    };
    std::vector<ElementaryAttachment> flat;
    for (const ElementaryAttachment &step : f.steps()) {
        ElementaryAttachment s = step;
        for (std::string &gname : s.glued)
            gname = resolve(gname);
        if (classify(s) == StepKind::annulus) {
            rename[s.new_boundary[0]] = s.glued[0];
            continue;
        }
        flat.push_back(std::move(s));
    }

    std::vector<ElementaryAttachment> out;
    std::size_t counter = 0;
    for (const ElementaryAttachment &step : flat) {
        const std::size_t h = step.piece_genus, k = step.glued.size(),
                          m = step.new_boundary.size();
        if (m == 0)
            throw std::invalid_argument("open capping cannot contain a full cap");
        // Handle layout of a single attachment puts the piece handles before
        // the connecting ones, so grow the genus first, then chain the glued
        // components with pants, then split off the new components.
        std::string cur = step.glued[0];
        std::vector<ElementaryAttachment> local;
        for (std::size_t t = 0; t < h; ++t) {
            std::string x1 = detail::fresh_label(counter), x2 = detail::fresh_label(counter);
            std::string next = detail::fresh_label(counter);
            local.push_back(ElementaryAttachment{0, {cur}, {x1, x2}});
            local.push_back(ElementaryAttachment{0, {x1, x2}, {next}});
            cur = next;
        }
        for (std::size_t j = 1; j < k; ++j) {
            std::string next = detail::fresh_label(counter);
            local.push_back(ElementaryAttachment{0, {cur, step.glued[j]}, {next}});
            cur = next;
        }
        if (m == 1) {
            if (local.empty())
                throw std::logic_error("unexpected residual annulus step");
            local.back().new_boundary[0] = step.new_boundary[0];
        }
        else {
            for (std::size_t t = 0; t + 1 < m; ++t) {
                bool last = t + 2 == m;
                std::string keep = step.new_boundary[t];
                std::string next = last ? step.new_boundary[t + 1] : detail::fresh_label(counter);
                local.push_back(ElementaryAttachment{0, {cur}, {keep, next}});
                cur = next;
            }
        }
        for (ElementaryAttachment &s : local)
            out.push_back(std::move(s));
    }
    return out;
}

} // namespace torelli
