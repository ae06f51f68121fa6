// Command-line front end: exact computations on homology-marked partitioned
// surfaces with JSON input and output. Every subcommand is a thin wrapper
// over a library call; output key order is canonical (sorted) and integers
// beyond 64 bits are emitted as decimal strings.

#include "torelli/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace torelli;

namespace {

/// Loaded inputs keyed by name, unique per kind.
struct Session {
    std::map<std::string, PartitionedSurface> surfaces;
    std::map<std::string, Marking> markings;
    std::map<std::string, PSurfMorphism> morphisms;
    std::map<std::string, SimplicialComplexFin> complexes;

    template <typename T>
    static const T &put(std::map<std::string, T> &slot, const std::string &name, T value)
    {
        auto [it, fresh] = slot.emplace(name, std::move(value));
        if (!fresh)
            throw std::invalid_argument("duplicate name for this kind: " + name);
        return it->second;
    }
};

/// Arguments may be inline JSON or a path to a JSON file.
json load_arg(const std::string &arg)
{
    if (!arg.empty() && (arg[0] == '{' || arg[0] == '[' || arg[0] == '"' ||
                         std::isdigit(static_cast<unsigned char>(arg[0])) || arg[0] == '-'))
        return json::parse(arg);
    std::ifstream in(arg);
    if (!in)
        throw std::invalid_argument("cannot open file: " + arg);
    json j;
    in >> j;
    return j;
}

void emit(const json &j) { std::cout << j.dump(2) << "\n"; }

int run(int argc, char **argv)
{
    CLI::App app{"exact partial-Torelli computations on partitioned surfaces"};
    app.require_subcommand(0, 1);
    bool print_schema = false;
    app.add_flag("--schema", print_schema, "print the JSON schemas and exit");

    Session session;

    // --- group ---------------------------------------------------------
    auto *group = app.add_subcommand("group", "abelian group and matrix computations");
    std::string snf_arg, rank_arg, ext_arg, kernel_arg;
    int ext_p = 2;
    group->add_option("--snf", snf_arg, "integer matrix: Smith normal form");
    group->add_option("--rank", rank_arg, "group: minimal number of generators");
    group->add_option("--exterior", ext_arg, "group: exterior power");
    group->add_option("--p", ext_p, "exterior power degree (2 or 3)");
    group->add_option("--kernel", kernel_arg,
                      "hom {source, target, matrix}: kernel with inclusion");

    // --- support ---------------------------------------------------------
    auto *support = app.add_subcommand("support", "symplectic-support criterion and witness");
    std::string support_marking;
    support->add_option("--marking", support_marking, "marking file")->required();

    // --- stabilize / destabilize ----------------------------------------
    auto *stab = app.add_subcommand("stabilize", "push a marking forward along a morphism");
    std::string stab_marking, stab_morphism;
    stab->add_option("--marking", stab_marking)->required();
    stab->add_option("--morphism", stab_morphism)->required();

    auto *destab = app.add_subcommand("destabilize", "solve a marking back along a morphism");
    std::string destab_marking, destab_morphism;
    destab->add_option("--marking", destab_marking)->required();
    destab->add_option("--morphism", destab_morphism)->required();

    // --- classify-morphism ------------------------------------------------
    auto *clas = app.add_subcommand("classify-morphism", "validate and classify a morphism");
    std::string clas_morphism;
    clas->add_option("--morphism", clas_morphism)->required();

    // --- torelli-check -----------------------------------------------------
    auto *tor = app.add_subcommand("torelli-check", "partial Torelli membership of a twist word");
    std::string tor_marking, tor_word;
    tor->add_option("--marking", tor_marking)->required();
    tor->add_option("--word", tor_word)->required();

    // --- orbit-index --------------------------------------------------------
    auto *orbit = app.add_subcommand("orbit-index", "orbit size of a marking under twists");
    std::string orbit_marking, orbit_gens;
    long orbit_level = 0, orbit_genus = 0;
    orbit->add_option("--marking", orbit_marking, "marking file");
    orbit->add_option("--gens", orbit_gens, "twist-word generators (array of words)");
    orbit->add_option("--level", orbit_level, "level marking shortcut: modulus");
    orbit->add_option("--genus", orbit_genus, "level marking shortcut: genus");

    // --- johnson --------------------------------------------------------------
    auto *john = app.add_subcommand("johnson", "mu-symplectic element and disc-pushing values");
    std::string john_marking, john_boundary, john_loop;
    john->add_option("--marking", john_marking)->required();
    john->add_option("--push", john_boundary, "singleton-block boundary component");
    john->add_option("--loop", john_loop, "pushing loop class (handle coordinates)");

    // --- verdict -----------------------------------------------------------------
    auto *verd = app.add_subcommand("verdict", "stability verdict for a marking and morphism");
    std::string verd_marking, verd_morphism;
    verd->add_option("--marking", verd_marking)->required();
    verd->add_option("--morphism", verd_morphism)->required();

    // --- bounds ---------------------------------------------------------------
    auto *bnd = app.add_subcommand("bounds", "stable-range thresholds");
    long bnd_rank = -1, bnd_lambda = -1, bnd_k = 0, bnd_genus = -1;
    bnd->add_option("--rank", bnd_rank, "coefficient rank");
    bnd->add_option("--lambda", bnd_lambda, "finite group order (nonabelian markings)");
    bnd->add_option("--k", bnd_k, "homology degree");
    bnd->add_option("--genus", bnd_genus, "also report the largest stable degree");

    // --- connectivity -----------------------------------------------------------
    auto *conn = app.add_subcommand("connectivity",
                                    "complex homology or connectivity-bound formulas");
    std::string conn_complex;
    long conn_up_to = 2, conn_genus = -1, conn_h = -1, conn_rank = -1, conn_lambda = -1,
         conn_n = -1, conn_c = -1;
    conn->add_option("--complex", conn_complex, "finite complex: reduced homology");
    conn->add_option("--up-to", conn_up_to, "top degree");
    conn->add_option("--genus", conn_genus, "formula mode: surface genus");
    conn->add_option("--h-genus", conn_h, "formula mode: subsurface genus");
    conn->add_option("--rank", conn_rank, "formula mode: coefficient rank");
    conn->add_option("--lambda", conn_lambda, "formula mode: finite group order");
    conn->add_option("--n", conn_n, "machine mode: index");
    conn->add_option("--c", conn_c, "machine mode: slope");

    // --- fiber ---------------------------------------------------------------------
    auto *fib = app.add_subcommand("fiber", "relative fibers and the fiber criterion");
    std::string fib_domain, fib_codomain, fib_map, fib_face, fib_simplex;
    long fib_check = -1;
    bool fib_corollary = false;
    fib->add_option("--domain", fib_domain)->required();
    fib->add_option("--codomain", fib_codomain)->required();
    fib->add_option("--map", fib_map, "vertex map as [[v, w], ...]")->required();
    fib->add_option("--face", fib_face, "face of --simplex");
    fib->add_option("--simplex", fib_simplex, "simplex of the codomain");
    fib->add_option("--check", fib_check, "run the fiber criterion at this n");
    fib->add_flag("--corollary", fib_corollary, "corollary mode: conclude n-connectivity");

    // --- badlink ---------------------------------------------------------------------
    auto *bad = app.add_subcommand("badlink", "link complex of a bad simplex");
    std::string bad_complex, bad_simplex, bad_family;
    bad->add_option("--complex", bad_complex)->required();
    bad->add_option("--simplex", bad_simplex)->required();
    bad->add_option("--bad", bad_family, "bad family as an array of simplices")->required();

    CLI11_PARSE(app, argc, argv);

    if (print_schema) {
        json schema{
            {"surface", {{"genus", "int"}, {"boundary", "[string]"}, {"partition", "[[string]]"}}},
            {"group", {{"free_rank", "int"}, {"torsion", "[int]"}}},
            {"marking",
             {{"surface", "surface"},
              {"target", "group"},
              {"matrix", "rows = target generators, columns = a1,b1,...,ag,bg then arcs "
                         "block-by-block (anchored at each block's first component)"}}},
            {"morphism",
             {{"source", "surface"},
              {"steps", "[{h: int, glued: [string] (first = routing anchor), new: [string]}]"}}},
            {"twist_word", "[{class: [int] over a1,b1,...,ag,bg,loops, exp: int}]"},
            {"complex", {{"simplices", "{\"0\": [v], \"1\": [[v,v]], ...}"}}},
            {"vector", "integer array; entries beyond 64 bits as decimal strings"},
            {"exit_codes", {{"1", "malformed input"}, {"2", "domain error"}}}};
        emit(schema);
        return 0;
    }

    if (group->parsed()) {
        json out;
        if (!snf_arg.empty()) {
            Mat m = json_to_mat(load_arg(snf_arg));
            SmithDecomposition s = smith_normal_form(m);
            out["snf"] = json{{"u", mat_to_json(s.u)}, {"d", mat_to_json(s.d)},
                              {"v", mat_to_json(s.v)}};
        }
        if (!rank_arg.empty()) {
            FgAbGroup g = json_to_group(load_arg(rank_arg));
            out["group"] = group_to_json(g);
            out["rank"] = g.rank();
        }
        if (!ext_arg.empty()) {
            FgAbGroup g = json_to_group(load_arg(ext_arg));
            ExteriorPower e = exterior_power(g, ext_p);
            json subsets = json::array();
            for (std::size_t i = 0; i < e.dim(); ++i) {
                json s = json::array();
                for (int t = 0; t < e.p; ++t)
                    s.push_back(e.subsets[i][static_cast<std::size_t>(t)]);
                subsets.push_back(s);
            }
            out["exterior"] = json{{"p", e.p},
                                   {"group", group_to_json(e.group)},
                                   {"subsets", subsets},
                                   {"moduli", vec_to_json(e.moduli)}};
        }
        if (!kernel_arg.empty()) {
            json j = load_arg(kernel_arg);
            AbHom f(json_to_group(j.at("source")), json_to_group(j.at("target")),
                    json_to_mat(j.at("matrix")));
            KernelResult k = kernel(f);
            out["kernel"] = json{{"group", group_to_json(k.group)},
                                 {"inclusion", mat_to_json(k.inclusion.matrix())}};
        }
        if (out.empty())
            throw std::invalid_argument("group: pick one of --snf/--rank/--exterior/--kernel");
        emit(out);
        return 0;
    }

    if (support->parsed()) {
        const Marking &m =
            Session::put(session.markings, support_marking, json_to_marking(load_arg(support_marking)));
        SupportCheck c = is_supported_on_symplectic(m);
        json out{{"supported", c.supported}};
        if (c.supported) {
            out["witness"] = json{
                {"genus", c.witness->subspace.genus()},
                {"subspace_basis", mat_to_json(c.witness->subspace.basis)},
                {"destabilized_matrix", mat_to_json(c.witness->destabilized.matrix())},
                {"arc_corrections", mat_to_json(c.witness->arc_corrections)}};
        }
        emit(out);
        return 0;
    }

    if (stab->parsed()) {
        Marking m = json_to_marking(load_arg(stab_marking));
        PSurfMorphism f = json_to_morphism(load_arg(stab_morphism));
        emit(marking_to_json(stabilize_marking(m, f)));
        return 0;
    }

    if (destab->parsed()) {
        Marking m = json_to_marking(load_arg(destab_marking));
        PSurfMorphism f = json_to_morphism(load_arg(destab_morphism));
        DestabilizeResult r = destabilize_marking(m, f);
        json out{{"ok", r.ok}};
        if (r.ok)
            out["marking"] = marking_to_json(*r.marking);
        else
            out["violating_class"] = vec_to_json(*r.violating_class);
        emit(out);
        return 0;
    }

    if (clas->parsed()) {
        PSurfMorphism f = json_to_morphism(load_arg(clas_morphism));
        json steps = json::array();
        for (const ElementaryAttachment &s : f.steps())
            steps.push_back(to_string(classify(s)));
        json out{{"steps", steps},
                 {"target", surface_to_json(f.target())},
                 {"partition_bijective", is_partition_bijective(f)},
                 {"open_capping", is_open_capping(f)}};
        emit(out);
        return 0;
    }

    if (tor->parsed()) {
        Marking m = json_to_marking(load_arg(tor_marking));
        TwistWord w = json_to_word(load_arg(tor_word));
        emit(json{{"member", torelli_membership(w, m)}});
        return 0;
    }

    if (orbit->parsed()) {
        std::optional<Marking> m;
        std::vector<TwistWord> gens;
        if (orbit_level > 0) {
            if (orbit_genus <= 0)
                throw std::invalid_argument("--level needs --genus");
            PartitionedHomology h(one_boundary_surface(static_cast<std::size_t>(orbit_genus)));
            IntVec torsion(2 * static_cast<std::size_t>(orbit_genus), Int(orbit_level));
            FgAbGroup a(0, torsion);
            m.emplace(h, AbHom(h.group(), a, Mat::identity(h.rank())));
            gens = humphries_words(static_cast<std::size_t>(orbit_genus));
        }
        else {
            if (orbit_marking.empty())
                throw std::invalid_argument("orbit-index needs --marking or --level/--genus");
            m.emplace(json_to_marking(load_arg(orbit_marking)));
            if (!orbit_gens.empty()) {
                for (const json &jw : load_arg(orbit_gens))
                    gens.push_back(json_to_word(jw));
            }
            else if (m->homology.surface().boundary.size() == 1) {
                gens = humphries_words(m->homology.genus());
            }
            else {
                throw std::invalid_argument(
                    "orbit-index needs --gens for surfaces with several boundary components");
            }
        }
        emit(json{{"index", int_to_json(orbit_index(*m, gens))}});
        return 0;
    }

    if (john->parsed()) {
        Marking m = json_to_marking(load_arg(john_marking));
        MuSymplecticElement w = mu_symplectic_element(m);
        json out{{"omega_mu", vec_to_json(w.value)},
                 {"nondegenerate", is_symplectically_nondegenerate(m)}};
        if (!john_boundary.empty()) {
            if (john_loop.empty())
                throw std::invalid_argument("--push needs --loop");
            DiscPushClass d{john_boundary, json_to_vec(load_arg(john_loop))};
            JohnsonValue v = johnson_on_discpush(d, m);
            out["value"] = vec_to_json(v.value);
            out["value_is_zero"] = v.is_zero();
        }
        emit(out);
        return 0;
    }

    if (verd->parsed()) {
        Marking m = json_to_marking(load_arg(verd_marking));
        PSurfMorphism f = json_to_morphism(load_arg(verd_morphism));
        emit(verdict_to_json(nonstability_verdict(m, f)));
        return 0;
    }

    if (bnd->parsed()) {
        json out;
        if (bnd_rank >= 0) {
            StableRange s = homology_marking_range(bnd_rank, bnd_k);
            out["iso_genus"] = int_to_json(s.iso_genus);
            out["surjection_genus"] = int_to_json(s.surjection_genus);
            if (bnd_genus >= 0) {
                auto kmax = max_stable_degree(bnd_genus, bnd_rank);
                out["k_max"] = kmax ? json(int_to_json(*kmax)) : json(nullptr);
            }
        }
        if (bnd_lambda >= 0) {
            StableRange s = nonabelian_marking_range(bnd_lambda, bnd_k);
            out["lambda_iso_genus"] = int_to_json(s.iso_genus);
            out["lambda_surjection_genus"] = int_to_json(s.surjection_genus);
        }
        if (out.empty())
            throw std::invalid_argument("bounds: pass --rank and/or --lambda");
        emit(out);
        return 0;
    }

    if (conn->parsed()) {
        json out;
        if (!conn_complex.empty()) {
            const SimplicialComplexFin &x = Session::put(
                session.complexes, conn_complex, json_to_complex(load_arg(conn_complex)));
            json hs = json::array();
            for (const FgAbGroup &h : x.reduced_homology(static_cast<int>(conn_up_to)))
                hs.push_back(group_to_json(h));
            out["reduced_homology"] = hs;
            int best = x.empty() ? -2 : -1;
            for (int n = 0; n <= conn_up_to && x.homologically_connected(n); ++n)
                best = n;
            out["homological_connectivity"] =
                best <= -2 ? json("empty")
                           : json(best == conn_up_to ? ">= " + std::to_string(best)
                                                     : std::to_string(best));
        }
        if (conn_genus >= 0 && conn_h >= 1)
            out["subsurfaces"] = rat_to_json(subsurface_complex_connectivity(conn_genus, conn_h));
        if (conn_genus >= 0 && conn_h >= 1 && conn_rank >= 0)
            out["vanishing_subsurfaces"] =
                rat_to_json(vanishing_subsurface_connectivity(conn_genus, conn_rank, conn_h));
        if (conn_genus >= 0 && conn_h >= 1 && conn_lambda >= 0)
            out["vanishing_subsurfaces_nonabelian"] =
                rat_to_json(vanishing_subsurface_connectivity(conn_genus, conn_lambda, conn_h));
        if (conn_genus >= 0 && conn_rank >= 0)
            out["vanishing_loops"] = rat_to_json(vanishing_loop_connectivity(conn_genus, conn_rank));
        if (conn_n >= 0 && conn_c >= 2)
            out["machine"] = rat_to_json(machine_connectivity(conn_n, conn_c));
        if (out.empty())
            throw std::invalid_argument("connectivity: pass --complex or formula parameters");
        emit(out);
        return 0;
    }

    if (fib->parsed()) {
        SimplicialComplexFin x = json_to_complex(load_arg(fib_domain));
        SimplicialComplexFin y = json_to_complex(load_arg(fib_codomain));
        std::map<int, int> vm;
        for (const json &pair : load_arg(fib_map))
            vm[pair.at(0).get<int>()] = pair.at(1).get<int>();
        SimplicialMap psi{std::move(x), std::move(y), std::move(vm)};
        psi.validate();
        json out;
        if (!fib_simplex.empty()) {
            Simplex sg = load_arg(fib_simplex).get<Simplex>();
            Simplex sp = fib_face.empty() ? sg : load_arg(fib_face).get<Simplex>();
            out["fiber"] = complex_to_json(relative_fiber(psi, sp, sg));
        }
        if (fib_check >= 0) {
            FiberCheckReport rep =
                check_fiber_lemma_instance(psi, static_cast<int>(fib_check), fib_corollary);
            out["check"] = json{{"n", rep.n},
                                {"corollary_mode", rep.corollary_mode},
                                {"hypotheses_hold", rep.hypotheses_hold},
                                {"hypothesis_failures", rep.hypothesis_failures},
                                {"conclusion", rep.conclusion_statement},
                                {"conclusion_checked", rep.conclusion_checked},
                                {"conclusion_holds", rep.conclusion_holds},
                                {"conclusion_failures", rep.conclusion_failures}};
        }
        if (out.empty())
            throw std::invalid_argument("fiber: pass --simplex and/or --check");
        emit(out);
        return 0;
    }

    if (bad->parsed()) {
        SimplicialComplexFin x = json_to_complex(load_arg(bad_complex));
        Simplex sg = load_arg(bad_simplex).get<Simplex>();
        std::set<Simplex> family;
        for (const json &s : load_arg(bad_family))
            family.insert(normalize_simplex(s.get<Simplex>()));
        emit(complex_to_json(bad_simplex_link(x, sg, family)));
        return 0;
    }

    std::cout << app.help() << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    try {
        return run(argc, argv);
    }
    catch (const nlohmann::json::exception &e) {
        std::cout << json{{"error", e.what()}}.dump(2) << "\n";
        return 1;
    }
    catch (const std::invalid_argument &e) {
        std::cout << json{{"error", e.what()}}.dump(2) << "\n";
        return 1;
    }
    catch (const std::domain_error &e) {
        std::cout << json{{"error", e.what()}}.dump(2) << "\n";
        return 2;
    }
    catch (const std::exception &e) {
        std::cout << json{{"error", e.what()}}.dump(2) << "\n";
        return 1;
    }
}
