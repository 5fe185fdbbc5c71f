// Command-line interface: compute Cayley varieties, secant censuses, tangent
// reports, singularity sweeps, full pipelines, seeded instances, and the
// named verification claims. Tensors are read from JSON files or stdin
// ("-"); reports are printed as JSON to stdout or --out.

#include <CLI11.hpp>

#include <iostream>

#include "cayley/io.hpp"

using namespace cayley;

namespace {

struct GlobalFlags {
    int max_ext_degree = 2;
    uint64_t budget = 200000000;
    std::string out;
    int threads = 1;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const Json& j, const GlobalFlags& flags) {
    if (flags.out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(flags.out);
        if (!out) throw std::runtime_error("cannot write " + flags.out);
        out << j.dump(2) << "\n";
    }
}

PipelineShape parse_shape(const std::string& s) {
    if (s == "genus3") return PipelineShape::Genus3;
    if (s == "genus4") return PipelineShape::Genus4;
    if (s == "genus5") return PipelineShape::Genus5;
    if (s == "quintic") return PipelineShape::Quintic;
    throw CLI::ValidationError("--shape", "unknown shape " + s);
}

PipelineShape shape_of_tensor(const BlockTensor& A) {
    auto sizes = A.block_sizes();
    if (A.n() == 2 && sizes == std::vector<int>{4}) return PipelineShape::Genus3;
    if (A.n() == 3 && sizes == std::vector<int>{2, 3}) return PipelineShape::Genus4;
    if (A.n() == 4 && sizes == std::vector<int>{2, 2, 2}) return PipelineShape::Genus5;
    if (A.n() == 3 && sizes == std::vector<int>{5}) return PipelineShape::Quintic;
    throw std::runtime_error("tensor does not match a known pipeline shape");
}

PipelineOptions pipeline_options(const GlobalFlags& flags) {
    PipelineOptions opts;
    opts.max_ext_degree = flags.max_ext_degree;
    opts.enum_opts.budget = flags.budget;
    opts.enum_opts.threads = flags.threads;
    return opts;
}

int emit_checks(const PipelineResult& res, const BlockTensor& A, const GlobalFlags& flags) {
    Json rep = report_to_json(res, detail::digest(tensor_to_string(A)));
    emit(rep, flags);
    for (const auto& c : res.checks)
        std::cerr << (c.pass ? "[PASS] " : "[FAIL] ") << c.claim
                  << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
    return res.all_pass() ? 0 : 1;
}

uint64_t field_arg_p(const std::string& field_arg) {
    auto comma = field_arg.find(',');
    return std::stoull(field_arg.substr(0, comma));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for symmetroid intersections and Cayley varieties"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalFlags flags;
    if (const char* env = std::getenv("CAYLEY_THREADS")) flags.threads = std::max(1, atoi(env));
    app.add_option("--max-ext-degree", flags.max_ext_degree, "extension degree bound")
        ->capture_default_str();
    app.add_option("--budget", flags.budget, "point evaluation budget")->capture_default_str();
    app.add_option("--out", flags.out, "write the JSON report to this file");
    app.add_option("--threads", flags.threads, "enumeration worker threads")->capture_default_str();

    std::string tensor_path = "-";
    std::string shape_arg, field_arg = "101", claim;
    uint64_t seed_value = 1;

    auto* cayley_cmd = app.add_subcommand("cayley", "compute the Cayley variety of a tensor");
    cayley_cmd->add_option("tensor", tensor_path, "tensor JSON file or -");

    auto* secants_cmd = app.add_subcommand("secants", "secant census of the Cayley variety");
    secants_cmd->add_option("tensor", tensor_path, "tensor JSON file or -");

    auto* tangents_cmd = app.add_subcommand("tangents", "full tangent reports per secant class");
    tangents_cmd->add_option("tensor", tensor_path, "tensor JSON file or -");

    auto* sing_cmd = app.add_subcommand("singularities", "singularity classification sweep");
    sing_cmd->add_option("tensor", tensor_path, "tensor JSON file or -");

    auto* pipeline_cmd = app.add_subcommand("pipeline", "run the full pipeline for a shape");
    pipeline_cmd->add_option("tensor", tensor_path, "tensor JSON file or -");
    pipeline_cmd->add_option("--shape", shape_arg, "genus3|genus4|genus5|quintic");

    auto* seed_cmd = app.add_subcommand("seed", "emit a seeded tensor");
    seed_cmd->add_option("--shape", shape_arg, "genus3|genus4|genus5|quintic")->required();
    seed_cmd->add_option("--field", field_arg, "prime p (seeded tensors live over F_p)");
    seed_cmd->add_option("--seed", seed_value, "generator seed");

    auto* verify_cmd = app.add_subcommand("verify", "run a named acceptance check");
    verify_cmd
        ->add_option("--claim", claim,
                     "g3-bitangents|g4-tritangents|g5-quadritangents|quintic-tritangents|"
                     "incidence-cover|psi-gauss-diagram|recillas")
        ->required();
    verify_cmd->add_option("--field", field_arg, "prime p for the seeded instance");
    verify_cmd->add_option("--seed", seed_value, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*seed_cmd) {
            SeedRecipe recipe;
            recipe.shape = parse_shape(shape_arg);
            recipe.p = field_arg_p(field_arg);
            recipe.rng_seed = seed_value;
            recipe.retries = 500000;
            recipe.enum_opts.budget = flags.budget;
            recipe.enum_opts.threads = flags.threads;
            auto run_seeder = [&]() {
                switch (recipe.shape) {
                    case PipelineShape::Genus3: return seed_genus3(recipe);
                    case PipelineShape::Genus4: return seed_genus4_validated(recipe);
                    case PipelineShape::Genus5: return seed_genus5_validated(recipe);
                    case PipelineShape::Quintic: return seed_quintic_validated(recipe);
                }
                throw std::logic_error("bad shape");
            };
            SeededInstance inst = run_seeder();
            if (flags.out.empty()) {
                std::cout << tensor_to_string(inst.tensor);
            } else {
                save_tensor(inst.tensor, flags.out);
            }
            return 0;
        }

        if (*cayley_cmd || *secants_cmd || *tangents_cmd || *sing_cmd || *pipeline_cmd) {
            std::optional<BlockTensor> loaded;
            try {
                loaded = tensor_from_string(read_input(tensor_path));
            } catch (const std::exception& e) {
                std::cerr << "bad tensor file: " << e.what() << "\n";
                return 2;
            }
            BlockTensor& A = *loaded;
            EnumOptions eo;
            eo.budget = flags.budget;
            eo.threads = flags.threads;

            if (*cayley_cmd) {
                CayleyVariety cv = cayley_points(A, flags.max_ext_degree, eo);
                Json j;
                j["version"] = kToolVersion;
                j["cayley"] = variety_to_json(cv);
                emit(j, flags);
                return 0;
            }
            if (*secants_cmd) {
                CayleyVariety cv = cayley_points(A, flags.max_ext_degree, eo);
                auto secants = all_secants(cv);
                SecantOrbits orbits = daut_orbit_partition(A, cv, secants);
                Json j;
                j["version"] = kToolVersion;
                j["cayley"] = variety_to_json(cv);
                j["secants"]["count"] = secants.size();
                j["secants"]["orbit_classes"] = orbits.orbits.size();
                Json stable = Json::array();
                int nstable = 0;
                for (const auto& s : secants)
                    if (s.frobenius_stable) ++nstable;
                j["secants"]["frobenius_stable"] = nstable;
                Json os = Json::array();
                for (size_t o = 0; o < orbits.orbits.size(); ++o) {
                    Json oj;
                    oj["size"] = orbits.orbits[o].size();
                    oj["sigma_fixed"] = bool(orbits.sigma_fixed[o]);
                    os.push_back(oj);
                }
                j["secants"]["orbits"] = os;
                emit(j, flags);
                return 0;
            }
            if (*tangents_cmd) {
                CayleyVariety cv = cayley_points(A, flags.max_ext_degree, eo);
                auto secants = all_secants(cv);
                SecantOrbits orbits = daut_orbit_partition(A, cv, secants);
                ContactOptions copts;
                copts.enum_opts = eo;
                Json reports = Json::array();
                for (int rep : orbits.rep_of) {
                    TangentReport tr = contact_report(A, cv, secants[size_t(rep)], copts);
                    Json rj;
                    rj["secant"] = {tr.secant.i, tr.secant.j};
                    rj["classification"] = classification_name(tr.classification);
                    if (tr.hyperplane) rj["covector"] = detail::vec_to_json(tr.hyperplane->covector);
                    rj["contact_certified"] = tr.contact_certified;
                    Json cps = Json::array();
                    for (const auto& cp : tr.contact_points) {
                        Json cj = point_to_json(cp.x);
                        cj["tangent"] = cp.tangent;
                        cj["kernel_meets_secant"] = cp.kernel_meets_secant;
                        cps.push_back(cj);
                    }
                    rj["contact_points"] = cps;
                    reports.push_back(rj);
                }
                Json j;
                j["version"] = kToolVersion;
                j["tangent_reports"] = reports;
                emit(j, flags);
                return 0;
            }
            if (*sing_cmd) {
                int scan_degree = 1;
                for (int e = 2; e <= flags.max_ext_degree; ++e) {
                    uint64_t space = proj_space_size(A.n(), GF(A.field().p, e).q);
                    if (space != 0 && space <= flags.budget) scan_degree = e;
                }
                EssentialLocus locus = essential_locus_scan(A, scan_degree, eo);
                Json j;
                j["version"] = kToolVersion;
                j["swept_degree"] = locus.swept_degree;
                Json records = Json::array();
                for (const auto& pt : locus.on_x) {
                    auto rec = classify_singularity(A, pt);
                    Json rj = point_to_json(pt);
                    rj["kind"] = "essential";
                    if (rec) {
                        rj["block_coranks"] = rec->block_coranks;
                        if (rec->witness) rj["witness"] = point_to_json(*rec->witness);
                    }
                    records.push_back(rj);
                }
                // accidental singularities through the Cayley correspondence
                CayleyVariety cv = cayley_points(A, flags.max_ext_degree, eo);
                Json accidental = Json::array();
                if (cv.geometrically_complete) {
                    for (size_t k = 0; k < cv.points.size(); ++k) {
                        if (cv.reduced[k]) continue;
                        Json aj;
                        aj["cayley_point"] = point_to_json(cv.points[k]);
                        accidental.push_back(aj);
                    }
                }
                j["essential_on_x"] = records;
                j["nonreduced_cayley_points"] = accidental;
                j["cayley_geometrically_complete"] = cv.geometrically_complete;
                emit(j, flags);
                return 0;
            }
            // pipeline
            PipelineShape shape = shape_arg.empty() ? shape_of_tensor(A) : parse_shape(shape_arg);
            PipelineResult res = run_pipeline(shape, A, pipeline_options(flags));
            return emit_checks(res, A, flags);
        }

        if (*verify_cmd) {
            uint64_t p = field_arg_p(field_arg);
            if (claim == "g3-bitangents") {
                SeedRecipe r;
                r.p = p;
                r.rng_seed = seed_value;
                SeededInstance inst = seed_genus3(r);
                return emit_checks(genus3_pipeline(inst.tensor, pipeline_options(flags)),
                                   inst.tensor, flags);
            }
            if (claim == "g4-tritangents") {
                SeedRecipe r;
                r.p = p;
                r.rng_seed = seed_value;
                r.enum_opts.threads = flags.threads;
                SeededInstance inst = seed_genus4_validated(r);
                return emit_checks(genus4_pipeline(inst.tensor, pipeline_options(flags)),
                                   inst.tensor, flags);
            }
            if (claim == "g5-quadritangents") {
                SeedRecipe r;
                r.p = p == 101 ? 41 : p;  // default genus-5 field
                r.rng_seed = seed_value;
                r.retries = 500000;
                r.enum_opts.threads = flags.threads;
                SeededInstance inst = seed_genus5_validated(r);
                return emit_checks(genus5_pipeline(inst.tensor, pipeline_options(flags)),
                                   inst.tensor, flags);
            }
            if (claim == "quintic-tritangents") {
                SeedRecipe r;
                r.p = p;
                r.rng_seed = seed_value;
                r.retries = 5000;
                r.enum_opts.threads = flags.threads;
                SeededInstance inst = seed_quintic_validated(r);
                return emit_checks(quintic_pipeline(inst.tensor, pipeline_options(flags)),
                                   inst.tensor, flags);
            }
            if (claim == "incidence-cover") {
                const Field& f = GF(p);
                SeedRecipe r;
                r.p = p;
                r.rng_seed = seed_value;
                ProjPoint p_star(
                    Vec{f.from_int(1), f.from_int(2), f.from_int(3), f.from_int(4)});
                ProjPoint q_star(Vec{f.from_int(1), f.from_int(5), f.from_int(2), f.from_int(7),
                                     f.from_int(1)});
                SingularSeedResult res = seed_singular_genus4(r, p_star, q_star);
                auto cover = incidence_cover(res.tensor, res.variety, {res.p_star});
                bool pass = cover.size() == 1 && cover[0].fiber.size() == 2;
                Json j;
                j["version"] = kToolVersion;
                j["claim"] = claim;
                j["fiber_size"] = cover.empty() ? 0 : cover[0].fiber.size();
                j["pass"] = pass;
                emit(j, flags);
                std::cerr << (pass ? "[PASS] " : "[FAIL] ") << claim << "\n";
                return pass ? 0 : 1;
            }
            if (claim == "psi-gauss-diagram") {
                SeedRecipe r;
                r.p = p;
                r.rng_seed = seed_value;
                SeededInstance inst = seed_genus4(r);
                const BlockTensor& A = inst.tensor;
                const Field& f = A.field();
                SplitMix rng(seed_value * 77 + 1);
                int checked = 0;
                bool pass = true;
                while (checked < 200) {
                    Vec x(4, f.zero());
                    for (auto& c : x) c = rng.element(f);
                    if (is_zero_vec(x)) continue;
                    // slide x onto the quadric along a random line
                    bool found = false;
                    for (uint64_t t = 0; t < f.q && !found; ++t) {
                        Vec xt = x;
                        xt[0] += f.element_by_index(t);
                        if (is_zero_vec(xt)) continue;
                        if (!det(A.contract_x_block(0, xt)).is_zero()) continue;
                        if (rank(A.contract_x_block(0, xt)) != 1) continue;
                        Matrix jac = A.jacobian_at(xt);
                        Vec grad(4);
                        for (int c = 0; c < 4; ++c) grad[size_t(c)] = jac(0, c);
                        if (is_zero_vec(grad)) continue;
                        Subspace k = kernel_basis(A.contract_x_block(0, xt));
                        Vec emb(5, f.zero());
                        for (int c = 0; c < 2; ++c) emb[size_t(c)] = k.basis(0, c);
                        Vec psi = A.contract_yy(emb);
                        if (!proportional(psi, grad)) pass = false;
                        found = true;
                        ++checked;
                    }
                    if (!found) continue;
                }
                Json j;
                j["version"] = kToolVersion;
                j["claim"] = claim;
                j["points_checked"] = checked;
                j["pass"] = pass;
                emit(j, flags);
                std::cerr << (pass ? "[PASS] " : "[FAIL] ") << claim << "\n";
                return pass ? 0 : 1;
            }
            if (claim == "recillas") {
                const Field& f = GF(p);
                SplitMix rng(seed_value);
                bool pass = false;
                for (int tries = 0; tries < 200000 && !pass; ++tries) {
                    auto input = recillas_random_split(f, rng);
                    if (!input) continue;
                    BlockTensor A = recillas_construct(*input);
                    PipelineResult res;
                    try {
                        res = genus4_pipeline(A, pipeline_options(flags));
                    } catch (const NondegeneracyFailure&) {
                        continue;
                    }
                    if (res.all_pass()) {
                        pass = true;
                        Json j = report_to_json(res, detail::digest(tensor_to_string(A)));
                        j["claim"] = claim;
                        emit(j, flags);
                    }
                }
                std::cerr << (pass ? "[PASS] " : "[FAIL] ") << claim << "\n";
                return pass ? 0 : 1;
            }
            std::cerr << "unknown claim: " << claim << "\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
