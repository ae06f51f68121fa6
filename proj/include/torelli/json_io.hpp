#pragma once

#include "torelli/bounds.hpp"
#include "torelli/complexes.hpp"
#include "torelli/johnson.hpp"

#include <json.hpp>

#include <limits>

namespace torelli {

using json = nlohmann::json;

/// Integers serialize as JSON numbers when they fit in 64 bits and as
/// decimal strings beyond that; both forms parse back.
inline json int_to_json(const Int &x)
{
    if (x.fits_slong_p())
        return json(x.get_si());
    return json(x.get_str());
}

inline Int json_to_int(const json &j)
{
    if (j.is_number_integer())
        return Int(static_cast<long>(j.get<long long>()));
    if (j.is_string())
        return Int(j.get<std::string>());
    throw std::invalid_argument("expected an integer or a decimal string");
}

inline json vec_to_json(const IntVec &v)
{
    json a = json::array();
    for (const Int &x : v)
        a.push_back(int_to_json(x));
    return a;
}

inline IntVec json_to_vec(const json &j)
{
    if (!j.is_array())
        throw std::invalid_argument("expected an array of integers");
    IntVec v;
    for (const json &x : j)
        v.push_back(json_to_int(x));
    return v;
}

inline json mat_to_json(const Mat &m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        rows.push_back(vec_to_json(m.row(i)));
    return rows;
}

inline Mat json_to_mat(const json &j)
{
    if (!j.is_array())
        throw std::invalid_argument("expected a matrix as an array of rows");
    std::vector<IntVec> rows;
    for (const json &r : j)
        rows.push_back(json_to_vec(r));
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    Mat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw std::invalid_argument("ragged matrix rows");
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = rows[i][k];
    }
    return m;
}

inline json group_to_json(const FgAbGroup &g)
{
    json t = json::array();
    for (const Int &d : g.torsion())
        t.push_back(int_to_json(d));
    return json{{"free_rank", g.free_rank()}, {"torsion", t}};
}

inline FgAbGroup json_to_group(const json &j)
{
    if (!j.is_object() || !j.contains("free_rank"))
        throw std::invalid_argument("group wants {\"free_rank\": n, \"torsion\": [...]}");
    IntVec torsion;
    if (j.contains("torsion"))
        torsion = json_to_vec(j.at("torsion"));
    long fr = j.at("free_rank").get<long>();
    if (fr < 0)
        throw std::invalid_argument("free_rank must be nonnegative");
    return FgAbGroup(static_cast<std::size_t>(fr), torsion);
}

inline json surface_to_json(const PartitionedSurface &s)
{
    return json{{"genus", s.genus}, {"boundary", s.boundary}, {"partition", s.partition}};
}

inline PartitionedSurface json_to_surface(const json &j)
{
    if (!j.is_object() || !j.contains("genus") || !j.contains("boundary") ||
        !j.contains("partition"))
        throw std::invalid_argument(
            "surface wants {\"genus\": g, \"boundary\": [...], \"partition\": [[...]]}");
    PartitionedSurface s;
    long g = j.at("genus").get<long>();
    if (g < 0)
        throw std::invalid_argument("genus must be nonnegative");
    s.genus = static_cast<std::size_t>(g);
    s.boundary = j.at("boundary").get<std::vector<std::string>>();
    s.partition = j.at("partition").get<std::vector<std::vector<std::string>>>();
    s.validate();
    return s;
}

/// Markings carry their surface, coefficient group and matrix over the
/// documented basis order (a1, b1, ..., ag, bg, then arcs block by block).
inline json marking_to_json(const Marking &m)
{
    return json{{"surface", surface_to_json(m.homology.surface())},
                {"target", group_to_json(m.coefficients())},
                {"matrix", mat_to_json(m.mu.matrix())}};
}

inline Marking json_to_marking(const json &j)
{
    if (!j.is_object() || !j.contains("surface") || !j.contains("target") ||
        !j.contains("matrix"))
        throw std::invalid_argument(
            "marking wants {\"surface\": ..., \"target\": ..., \"matrix\": [[...]]}");
    PartitionedSurface s = json_to_surface(j.at("surface"));
    FgAbGroup a = json_to_group(j.at("target"));
    Mat m = json_to_mat(j.at("matrix"));
    return make_marking(s, a, std::move(m));
}

inline json morphism_to_json(const PSurfMorphism &f)
{
    json steps = json::array();
    for (const ElementaryAttachment &s : f.steps())
        steps.push_back(json{{"h", s.piece_genus}, {"glued", s.glued}, {"new", s.new_boundary}});
    return json{{"source", surface_to_json(f.source())}, {"steps", steps}};
}

inline PSurfMorphism json_to_morphism(const json &j)
{
    if (!j.is_object() || !j.contains("source") || !j.contains("steps"))
        throw std::invalid_argument("morphism wants {\"source\": ..., \"steps\": [...]}");
    PartitionedSurface s = json_to_surface(j.at("source"));
    std::vector<ElementaryAttachment> steps;
    for (const json &js : j.at("steps")) {
        ElementaryAttachment step;
        long h = js.at("h").get<long>();
        if (h < 0)
            throw std::invalid_argument("piece genus must be nonnegative");
        step.piece_genus = static_cast<std::size_t>(h);
        step.glued = js.at("glued").get<std::vector<std::string>>();
        if (js.contains("new"))
            step.new_boundary = js.at("new").get<std::vector<std::string>>();
        steps.push_back(std::move(step));
    }
    return PSurfMorphism(std::move(s), std::move(steps));
}

inline json word_to_json(const TwistWord &w)
{
    json a = json::array();
    for (const auto &[c, e] : w)
        a.push_back(json{{"class", vec_to_json(c.cls)}, {"exp", e}});
    return a;
}

inline TwistWord json_to_word(const json &j)
{
    if (!j.is_array())
        throw std::invalid_argument("twist word wants [{\"class\": [...], \"exp\": k}, ...]");
    TwistWord w;
    for (const json &t : j) {
        CurveClass c;
        c.cls = json_to_vec(t.at("class"));
        if (t.contains("label"))
            c.label = t.at("label").get<std::string>();
        w.push_back({std::move(c), t.at("exp").get<long>()});
    }
    return w;
}

inline json complex_to_json(const SimplicialComplexFin &x)
{
    std::map<std::string, json> by_dim;
    for (int k = 0; k <= x.dim(); ++k) {
        json list = json::array();
        for (const Simplex &s : x.simplices_of_dim(k)) {
            if (k == 0)
                list.push_back(s[0]);
            else
                list.push_back(s);
        }
        by_dim[std::to_string(k)] = list;
    }
    return json{{"simplices", by_dim}};
}

inline SimplicialComplexFin json_to_complex(const json &j)
{
    if (!j.is_object() || !j.contains("simplices"))
        throw std::invalid_argument("complex wants {\"simplices\": {\"0\": [...], ...}}");
    std::vector<Simplex> all;
    for (const auto &[dim, list] : j.at("simplices").items()) {
        for (const json &s : list) {
            if (s.is_number_integer())
                all.push_back({s.get<int>()});
            else
                all.push_back(s.get<Simplex>());
        }
    }
    return SimplicialComplexFin::from_simplices(all);
}

inline json rat_to_json(const Rat &r)
{
    if (r.get_den() == 1)
        return int_to_json(r.get_num());
    return json(r.get_str());
}

inline json verdict_to_json(const NonstabilityVerdict &v)
{
    json out{{"verdict", to_string(v.kind)}, {"cited", v.cited},
             {"isomorphism_ruled_out", v.rules_out_isomorphism()}};
    if (v.witness_value)
        out["witness"] = vec_to_json(*v.witness_value);
    if (v.witness_loop)
        out["witness_loop"] = vec_to_json(*v.witness_loop);
    if (v.k_max)
        out["k_max"] = *v.k_max;
    return out;
}

} // namespace torelli
