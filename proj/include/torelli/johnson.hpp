#pragma once

#include "torelli/mcg.hpp"

namespace torelli {

/// The distinguished element of wedge^2 A attached to a marking: the image
/// of the symplectic element sum a_i ^ b_i of the capped-off surface under
/// the closed marking. Coordinates are in the exterior power's subset basis.
struct MuSymplecticElement {
    ExteriorPower wedge2;
    IntVec value;

    bool is_zero() const { return wedge2.is_zero(value); }
};

inline MuSymplecticElement mu_symplectic_element(const Marking &m)
{
    const FgAbGroup &a = m.coefficients();
    AbHom sym = symplectic_part(m);
    ExteriorPower e = exterior_power(a, 2);
    IntVec value(e.dim(), Int(0));
    for (std::size_t i = 0; i < m.homology.genus(); ++i) {
        IntVec va = sym.matrix().column(2 * i);
        IntVec vb = sym.matrix().column(2 * i + 1);
        IntVec term = e.eval({va, vb});
        for (std::size_t s = 0; s < value.size(); ++s)
            value[s] += term[s];
    }
    value = e.reduce(std::move(value));
    return MuSymplecticElement{std::move(e), std::move(value)};
}

/// Coordinates of x ^ omega_mu in wedge^3 A, for x in A.
inline IntVec wedge_with_mu_element(const IntVec &x, const Marking &m, const ExteriorPower &w3)
{
    AbHom sym = symplectic_part(m);
    IntVec value(w3.dim(), Int(0));
    for (std::size_t i = 0; i < m.homology.genus(); ++i) {
        IntVec va = sym.matrix().column(2 * i);
        IntVec vb = sym.matrix().column(2 * i + 1);
        IntVec term = w3.eval({x, va, vb});
        for (std::size_t s = 0; s < value.size(); ++s)
            value[s] += term[s];
    }
    return w3.reduce(std::move(value));
}

/// A marking is symplectically nondegenerate when a |-> a ^ omega_mu is a
/// nonzero homomorphism from A to wedge^3 A.
inline bool is_symplectically_nondegenerate(const Marking &m)
{
    const FgAbGroup &a = m.coefficients();
    ExteriorPower w3 = exterior_power(a, 3);
    if (w3.dim() == 0)
        return false;
    for (std::size_t r = 0; r < a.gen_count(); ++r) {
        IntVec er(a.gen_count(), Int(0));
        er[r] = 1;
        if (!w3.is_zero(wedge_with_mu_element(er, m, w3)))
            return true;
    }
    return false;
}

/// An element of the disc-pushing subgroup of a singleton-block boundary
/// component: the component being pushed and the homology class of the
/// pushing loop in the capped surface (handle coordinates).
struct DiscPushClass {
    std::string boundary;
    IntVec loop_class; // dimension 2 * genus
};

struct JohnsonValue {
    ExteriorPower wedge3;
    IntVec value;

    bool is_zero() const { return wedge3.is_zero(value); }
};

/// Value of the Johnson homomorphism restricted to the disc-pushing
/// subgroup: the image of the pushing loop under the closed marking, wedged
/// with the mu-symplectic element.
inline JohnsonValue johnson_on_discpush(const DiscPushClass &d, const Marking &m)
{
    const PartitionedSurface &s = m.homology.surface();
    std::size_t block = s.block_of(d.boundary);
    if (s.partition[block].size() != 1)
        throw std::invalid_argument("disc-pushing requires a singleton-block component");
    if (d.loop_class.size() != 2 * s.genus)
        throw std::invalid_argument("pushing loop has wrong dimension");
    AbHom sym = symplectic_part(m);
    IntVec image = sym.apply(d.loop_class);
    ExteriorPower w3 = exterior_power(m.coefficients(), 3);
    IntVec value = wedge_with_mu_element(image, m, w3);
    return JohnsonValue{std::move(w3), std::move(value)};
}

enum class VerdictKind {
    not_injective,
    not_isomorphism,
    iso_in_range,
    inconclusive,
};

inline const char *to_string(VerdictKind k)
{
    switch (k) {
    case VerdictKind::not_injective: return "NOT_INJECTIVE";
    case VerdictKind::not_isomorphism: return "NOT_ISOMORPHISM";
    case VerdictKind::iso_in_range: return "ISO_IN_RANGE";
    case VerdictKind::inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

/// Verdict on the map H_*(Torelli(source, mu)) -> H_*(Torelli(target, mu'))
/// induced by a stabilization. Conservative: a non-inconclusive verdict is
/// only issued when the corresponding hypothesis set is verified.
struct NonstabilityVerdict {
    VerdictKind kind = VerdictKind::inconclusive;
    /// NOT_INJECTIVE and NOT_ISOMORPHISM both rule out an isomorphism.
    bool rules_out_isomorphism() const
    {
        return kind == VerdictKind::not_injective || kind == VerdictKind::not_isomorphism;
    }
    std::optional<IntVec> witness_loop;   // pushing loop class, handle coordinates
    std::optional<IntVec> witness_value;  // its wedge^3 A coordinates (nonzero)
    std::optional<long> k_max;            // certified stable range, when any
    std::string cited;
};

/// Components of the source whose image in the target bounds a disc: their
/// complement region is connected with Euler characteristic one, swallows
/// only that component, and exposes nothing.
inline std::vector<std::string> disc_capped_components(const PSurfMorphism &f)
{
    std::vector<std::string> out;
    for (const detail::Region &r : detail::complement_regions(f))
        if (r.out_comps.empty() && r.source_comps.size() == 1 && r.euler == 1)
            out.push_back(*r.source_comps.begin());
    return out;
}

inline NonstabilityVerdict nonstability_verdict(const Marking &m, const PSurfMorphism &f)
{
    if (m.homology.surface() != f.source())
        throw std::invalid_argument("marking does not live on the morphism source");
    const FgAbGroup &a = m.coefficients();
    const std::size_t g = m.homology.genus();
    const std::size_t r = a.rank();

    // Disc-pushing obstruction: a singleton-block component capped by a
    // disc, with the composite of the closed marking and wedging by the
    // mu-symplectic element nonzero on some handle class.
    bool nondegenerate = is_symplectically_nondegenerate(m);
    if (nondegenerate) {
        for (const std::string &name : disc_capped_components(f)) {
            if (m.homology.surface().partition[m.homology.surface().block_of(name)].size() != 1)
                continue;
            ExteriorPower w3 = exterior_power(a, 3);
            AbHom sym = symplectic_part(m);
            for (std::size_t i = 0; i < 2 * g; ++i) {
                IntVec loop(2 * g, Int(0));
                loop[i] = 1;
                IntVec val = wedge_with_mu_element(sym.apply(loop), m, w3);
                if (!w3.is_zero(val)) {
                    NonstabilityVerdict v;
                    v.kind = VerdictKind::not_injective;
                    v.witness_loop = loop;
                    v.witness_value = val;
                    v.cited = "disc-pushing obstruction: capping a singleton-block "
                              "component kills part of H1";
                    return v;
                }
            }
        }
    }

    bool bijective = is_partition_bijective(f);
    bool supported = is_supported_on_symplectic(m).supported;

    if (!bijective && nondegenerate && supported && g >= 3 * r + 4) {
        NonstabilityVerdict v;
        v.kind = VerdictKind::not_isomorphism;
        v.cited = "non-partition-bijective stabilization of a nondegenerate "
                  "supported marking";
        return v;
    }

    if (bijective && supported && g >= 2 * r + 2) {
        NonstabilityVerdict v;
        v.kind = VerdictKind::iso_in_range;
        Int km = (Int(g) - Int(2 * r + 2)) / Int(r + 2);
        v.k_max = km.get_si();
        v.cited = "partition-bijective stable range";
        return v;
    }

    NonstabilityVerdict v;
    v.cited = "no verified hypothesis set";
    return v;
}

} // namespace torelli
