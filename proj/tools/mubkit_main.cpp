// mubkit: catalog, analysis and search tools for order-six complex Hadamard
// matrices and mutually unbiased bases.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mubkit/catalog.hpp"
#include "mubkit/detectors.hpp"
#include "mubkit/entanglement.hpp"
#include "mubkit/linalg.hpp"
#include "mubkit/matrix_io.hpp"
#include "mubkit/mu_search.hpp"
#include "mubkit/mub.hpp"
#include "mubkit/schmidt.hpp"
#include "mubkit/sinkhorn.hpp"

namespace {

using nlohmann::json;
using namespace mubkit;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitConvergence = 4;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open input file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

MatrixFile load_matrix(const std::string& path) {
    return matrix_from_json(read_input(path));
}

Complex parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) return Complex(std::stod(text), 0.0);
        return Complex(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
    } catch (const std::exception&) {
        throw ParseError("cannot parse complex value '" + text + "' (expected 're' or 're,im')");
    }
}

Tolerances tolerances_with(double structural) {
    Tolerances tol;
    tol.structural_tol = structural;
    return tol;
}

json hit_to_json(const PatternHit& hit) {
    return json{{"pattern", pattern_name(hit.pattern)},
                {"rows", hit.rows},
                {"cols", hit.cols},
                {"residual", hit.residual}};
}

json vector_to_json(const ComplexVector& v) {
    json out = json::array();
    for (const auto& e : v) out.push_back(json{{"re", e.real()}, {"im", e.imag()}});
    return out;
}

void emit_report(const json& machine) {
    std::cout << "---\n" << machine.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

const std::vector<std::string> kCatalogNames = {
    "fourier6", "spectral", "spectral_prime", "fourier_family",
    "h1",       "h2",       "h3",             "bjorck",
    "dita",     "sr3",      "sr4"};

ComplexMatrix make_catalog_matrix(const std::string& name,
                                  const std::map<std::string, std::string>& params) {
    const auto param = [&](const char* key, Complex fallback) {
        const auto it = params.find(key);
        return it == params.end() ? fallback : parse_complex(it->second);
    };
    const auto angle = [&](const char* key, double fallback) {
        const auto it = params.find(key);
        return it == params.end() ? fallback : parse_complex(it->second).real();
    };
    if (name == "fourier6") return fourier6();
    if (name == "spectral") return spectral();
    if (name == "spectral_prime") return spectral_prime();
    if (name == "fourier_family") {
        return fourier_family(param("z1", Complex(1.0, 0.0)), param("z2", Complex(1.0, 0.0)));
    }
    if (name == "h1") return h1();
    if (name == "h2") {
        // Defaults assemble a genuine rank-two Hadamard: w is the standard
        // order-3 core, v its quarter-turned sign twist.
        H2Params p;
        p.alpha = angle("alpha", std::numbers::pi / 4.0);
        p.beta = angle("beta", std::numbers::pi / 4.0);
        p.gamma = angle("gamma", 0.0);
        p.w = fourier3();
        ComplexMatrix signs = ComplexMatrix::identity(3);
        signs(2, 2) = Complex(-1.0, 0.0);
        p.v = scale(multiply(p.w, signs), Complex(0.0, 1.0));
        return h2(p).matrix;
    }
    if (name == "h3") {
        H3Params p;
        for (std::size_t j = 0; j < 3; ++j) {
            const std::string suffix = std::to_string(j + 1);
            p.alpha[j] = angle(("alpha" + suffix).c_str(), std::numbers::pi / 4.0);
            p.beta[j] = angle(("beta" + suffix).c_str(), 0.4 + 0.9 * static_cast<double>(j));
            p.gamma[j] = angle(("gamma" + suffix).c_str(), 0.2 + 1.1 * static_cast<double>(j));
        }
        p.v = fourier3();
        p.w = fourier3();
        return h3(p);
    }
    if (name == "bjorck") return bjorck();
    if (name == "dita") return dita();
    if (name == "sr3") return sr3_example(fourier3());
    if (name == "sr4") {
        ComplexMatrix d(3, 3);
        d(0, 0) = Complex(1.0, 0.0);
        d(1, 1) = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
        d(2, 2) = std::polar(1.0, 4.0 * std::numbers::pi / 3.0);
        return sr4_example(d, fourier3(), fourier3_alt());
    }
    throw std::invalid_argument("unknown catalog name: " + name);
}

int run_catalog(const std::string& action, const std::string& name,
                const std::vector<std::string>& raw_params) {
    if (action == "list") {
        for (const auto& n : kCatalogNames) std::cout << n << "\n";
        return kExitOk;
    }
    if (action != "emit") throw std::invalid_argument("catalog action must be 'list' or 'emit'");
    std::map<std::string, std::string> params;
    for (const auto& kv : raw_params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("--param expects key=value, got '" + kv + "'");
        }
        params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    MatrixFile file;
    file.matrix = make_catalog_matrix(name, params);
    if (file.matrix.rows == 6) file.shape = BipartiteShape{2, 3};
    std::cout << matrix_to_json(file);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// analyze / schmidt / filter / sinkhorn / musearch / ppt
// ---------------------------------------------------------------------------

int run_analyze(const std::string& path, double tol_value) {
    const MatrixFile file = load_matrix(path);
    const Tolerances tol = tolerances_with(tol_value);
    const ComplexMatrix& m = file.matrix;

    const bool unitary = is_unitary(m, tol);
    const bool hadamard = is_chm(m, tol);
    std::cout << "order: " << m.rows << "\n";
    std::cout << "is_unitary: " << (unitary ? "yes" : "no") << "\n";
    std::cout << "is_chm: " << (hadamard ? "yes" : "no") << "\n";

    json machine{{"order", m.rows}, {"is_unitary", unitary}, {"is_chm", hadamard}};
    if (hadamard) {
        const auto [dephased, move] = dephase_matrix(m);
        machine["dephased"] = json::parse(matrix_to_json({dephased, file.shape}));
        const BipartiteShape shape = file.shape.value_or(BipartiteShape{});
        if (m.rows == shape.dim()) {
            const auto report = product_columns(m, shape, tol);
            std::cout << "product_columns: " << report.columns.size() << "\n";
            json cols = json::array();
            for (const auto& c : report.columns) {
                cols.push_back(json{{"index", c.index},
                                    {"residual", c.residual},
                                    {"left", vector_to_json(c.left_factor)},
                                    {"right", vector_to_json(c.right_factor)}});
            }
            machine["product_columns"] = std::move(cols);
        }
    }
    emit_report(machine);
    return kExitOk;
}

BipartiteShape parse_shape(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos) throw ParseError("shape must look like 2x3");
    try {
        return BipartiteShape{static_cast<std::size_t>(std::stoul(text.substr(0, x))),
                              static_cast<std::size_t>(std::stoul(text.substr(x + 1)))};
    } catch (const std::exception&) {
        throw ParseError("shape must look like 2x3");
    }
}

int run_schmidt(const std::string& path, const std::string& shape_text, bool min_search,
                std::uint64_t budget, std::uint64_t seed) {
    const MatrixFile file = load_matrix(path);
    BipartiteShape shape = file.shape.value_or(BipartiteShape{});
    if (!shape_text.empty()) shape = parse_shape(shape_text);
    shape.validate();

    const SchmidtData data = schmidt_decomposition(file.matrix, shape);
    std::cout << "shape: " << shape.d_A << "x" << shape.d_B << "\n";
    std::cout << "rank: " << data.rank << "\n";
    std::cout << "singular_values:";
    for (double s : data.singular_values) std::cout << " " << s;
    std::cout << "\n";

    json machine{{"rank", data.rank},
                 {"singular_values", data.singular_values},
                 {"shape", json::array({shape.d_A, shape.d_B})}};
    if (min_search) {
        const MinSchmidtResult result =
            min_schmidt_upper_bound(file.matrix, budget, seed, Tolerances{}, shape);
        std::cout << "min_rank_upper_bound: " << result.best_rank << "\n";
        machine["min_rank_upper_bound"] = result.best_rank;
        machine["evaluations"] = result.evaluations;
    }
    emit_report(machine);
    return kExitOk;
}

int run_filter(const std::string& path) {
    const MatrixFile file = load_matrix(path);
    const FilterReport report = filter_trio_candidate(file.matrix);

    std::cout << "product_columns: " << report.product_column_count << "\n";
    std::cout << "schmidt_rank: " << report.schmidt_rank << "\n";
    std::cout << "excluded: " << (report.excluded ? "yes" : "no") << "\n";
    for (const auto& reason : report.reasons) std::cout << "reason: " << reason << "\n";

    json hits = json::array();
    for (const auto& h : report.hits) hits.push_back(hit_to_json(h));
    json phase_hits = json::array();
    for (const auto& h : report.phase_real_hits) phase_hits.push_back(hit_to_json(h));
    emit_report(json{{"product_columns", report.product_column_count},
                     {"schmidt_rank", report.schmidt_rank},
                     {"excluded", report.excluded},
                     {"reasons", report.reasons},
                     {"hits", std::move(hits)},
                     {"phase_real_hits", std::move(phase_hits)}});
    return kExitOk;
}

int run_sinkhorn(const std::string& path, double tol, std::size_t max_iter, std::uint64_t seed) {
    const MatrixFile file = load_matrix(path);
    const SinkhornForm form = sinkhorn_normalize(file.matrix, tol, max_iter, seed);
    const ComplexVector mu = mu_vector_from_sinkhorn(file.matrix, tol, max_iter, seed);

    std::cout << "residual: " << form.residual << "\n";
    std::cout << "iterations: " << form.iterations << "\n";
    std::cout << "restarts: " << form.restarts << "\n";
    std::cout << "mu_vector_residual: " << mu_vector_residual(file.matrix, mu) << "\n";

    emit_report(json{{"residual", form.residual},
                     {"iterations", form.iterations},
                     {"restarts", form.restarts},
                     {"core", json::parse(matrix_to_json({form.core, std::nullopt}))},
                     {"mu_vector", vector_to_json(mu)}});
    return kExitOk;
}

int run_musearch(const std::string& path, std::size_t trials, std::uint64_t seed, double tol_value,
                 const std::string& out_path) {
    const MatrixFile file = load_matrix(path);
    Tolerances tol;
    tol.search_tol = tol_value;
    const MuVectorSet set = find_mu_vectors(file.matrix, trials, seed, tol);

    double max_residual = 0.0;
    for (double r : set.residuals) max_residual = std::max(max_residual, r);
    std::cout << "distinct_vectors: " << set.vectors.size() << (set.capped ? " (capped)" : "")
              << "\n";
    std::cout << "trials: " << set.trials_run << "\n";
    std::cout << "max_residual: " << max_residual << "\n";
    std::cout << "discarded_trials: " << set.discarded_trials << "\n";
    std::cout << "nonconverged_trials: " << set.nonconverged_trials << "\n";
    if (set.vectors.size() >= 2) {
        std::cout << "min_pairwise_overlap: " << pairwise_min_overlap(set) << "\n";
    }

    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
        out << vectors_to_json(set.vectors);
    }

    json machine{{"distinct_vectors", set.vectors.size()},
                 {"capped", set.capped},
                 {"trials", set.trials_run},
                 {"seed", set.seed},
                 {"max_residual", max_residual},
                 {"discarded_trials", set.discarded_trials},
                 {"nonconverged_trials", set.nonconverged_trials}};
    if (set.vectors.size() >= 2) machine["min_pairwise_overlap"] = pairwise_min_overlap(set);
    if (out_path.empty()) {
        json vecs = json::array();
        for (const auto& v : set.vectors) vecs.push_back(vector_to_json(v));
        machine["vectors"] = std::move(vecs);
    }
    emit_report(machine);
    return kExitOk;
}

int run_ppt(const std::string& path) {
    const MatrixFile file = load_matrix(path);
    const BipartiteShape shape = file.shape.value_or(BipartiteShape{});
    const DensityMatrix rho(file.matrix, shape);
    const auto [ppt, witness] = is_ppt(rho);
    std::cout << "ppt: " << (ppt ? "yes" : "no") << "\n";
    std::cout << "min_eigenvalue: " << witness << "\n";
    emit_report(json{{"ppt", ppt}, {"min_eigenvalue", witness}});
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toolkit for order-six complex Hadamard matrices and mutually unbiased bases"};
    app.require_subcommand(1);

    // catalog
    auto* catalog_cmd = app.add_subcommand("catalog", "List or emit catalog matrices");
    std::string catalog_action, catalog_name;
    std::vector<std::string> catalog_params;
    catalog_cmd->add_option("action", catalog_action, "'list' or 'emit'")->required();
    catalog_cmd->add_option("name", catalog_name, "constructor name for 'emit'");
    catalog_cmd->add_option("--param", catalog_params, "constructor parameter key=value");

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "Unitarity/Hadamard/product-column report");
    std::string analyze_path;
    double analyze_tol = 1e-10;
    analyze_cmd->add_option("file", analyze_path, "matrix file ('-' for stdin)")->required();
    analyze_cmd->add_option("--tol", analyze_tol, "structural tolerance");

    // schmidt
    auto* schmidt_cmd = app.add_subcommand("schmidt", "Schmidt spectrum and rank");
    std::string schmidt_path, schmidt_shape;
    bool schmidt_min_search = false;
    std::uint64_t schmidt_budget = 10000, schmidt_seed = 0;
    schmidt_cmd->add_option("file", schmidt_path, "matrix file ('-' for stdin)")->required();
    schmidt_cmd->add_option("--shape", schmidt_shape, "bipartite shape, e.g. 2x3");
    schmidt_cmd->add_flag("--min-search", schmidt_min_search, "search for a rank-reducing move");
    schmidt_cmd->add_option("--budget", schmidt_budget, "objective evaluation budget");
    schmidt_cmd->add_option("--seed", schmidt_seed, "search seed");

    // filter
    auto* filter_cmd = app.add_subcommand("filter", "Trio admissibility filter");
    std::string filter_path;
    filter_cmd->add_option("file", filter_path, "matrix file ('-' for stdin)")->required();

    // sinkhorn
    auto* sinkhorn_cmd = app.add_subcommand("sinkhorn", "Sinkhorn normal form and MU vector");
    std::string sinkhorn_path;
    double sinkhorn_tol = 1e-10;
    std::size_t sinkhorn_max_iter = 100000;
    std::uint64_t sinkhorn_seed = 0;
    sinkhorn_cmd->add_option("file", sinkhorn_path, "matrix file ('-' for stdin)")->required();
    sinkhorn_cmd->add_option("--tol", sinkhorn_tol, "line-sum residual target");
    sinkhorn_cmd->add_option("--max-iter", sinkhorn_max_iter, "iteration budget");
    sinkhorn_cmd->add_option("--seed", sinkhorn_seed, "restart seed");

    // musearch
    auto* musearch_cmd = app.add_subcommand("musearch", "Enumerate vectors unbiased to I and U");
    std::string musearch_path, musearch_out;
    std::size_t musearch_trials = 0;
    std::uint64_t musearch_seed = 0;
    double musearch_tol = 1e-8;
    musearch_cmd->add_option("file", musearch_path, "matrix file ('-' for stdin)")->required();
    musearch_cmd->add_option("--trials", musearch_trials, "number of seeded starts")->required();
    musearch_cmd->add_option("--seed", musearch_seed, "search seed")->required();
    musearch_cmd->add_option("--tol", musearch_tol, "acceptance residual");
    musearch_cmd->add_option("--out", musearch_out, "write vectors to this file");

    // ppt
    auto* ppt_cmd = app.add_subcommand("ppt", "Partial-transpose positivity of a density matrix");
    std::string ppt_path;
    ppt_cmd->add_option("file", ppt_path, "matrix file ('-' for stdin)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (catalog_cmd->parsed()) return run_catalog(catalog_action, catalog_name, catalog_params);
        if (analyze_cmd->parsed()) return run_analyze(analyze_path, analyze_tol);
        if (schmidt_cmd->parsed()) {
            return run_schmidt(schmidt_path, schmidt_shape, schmidt_min_search, schmidt_budget,
                               schmidt_seed);
        }
        if (filter_cmd->parsed()) return run_filter(filter_path);
        if (sinkhorn_cmd->parsed()) {
            return run_sinkhorn(sinkhorn_path, sinkhorn_tol, sinkhorn_max_iter, sinkhorn_seed);
        }
        if (musearch_cmd->parsed()) {
            return run_musearch(musearch_path, musearch_trials, musearch_seed, musearch_tol,
                                musearch_out);
        }
        if (ppt_cmd->parsed()) return run_ppt(ppt_path);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
