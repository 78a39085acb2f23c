#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rtheta/errors.hpp"
#include "rtheta/schottky.hpp"
#include "rtheta/siegel.hpp"
#include "rtheta/theta.hpp"

using json = nlohmann::ordered_json;
using namespace rtheta;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

long long ellipsoid_cap_from_env() {
    const char* env = std::getenv("THETA_MAX_ELLIPSOID");
    if (!env) return 10000000;
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0)
        throw InputError("THETA_MAX_ELLIPSOID must be a positive integer");
    return v;
}

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open matrix file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("invalid JSON in " + path + ": " + e.what());
    }
    if (!j.contains("g") || !j.contains("re") || !j.contains("im"))
        throw InputError("matrix file must contain keys g, re, im");
    int g = 0;
    try {
        g = j.at("g").get<int>();
    } catch (const json::exception&) {
        throw InputError("field g must be an integer");
    }
    if (g < 1) throw InputError("genus must be >= 1");
    auto parse_block = [&](const char* key) {
        RealMatrix m(g, g);
        const json& arr = j.at(key);
        if (!arr.is_array() || static_cast<int>(arr.size()) != g)
            throw InputError(std::string(key) + " must be a " + std::to_string(g) + "x" +
                             std::to_string(g) + " array");
        for (int i = 0; i < g; ++i) {
            const json& row = arr.at(i);
            if (!row.is_array() || static_cast<int>(row.size()) != g)
                throw InputError(std::string(key) + " must be a " + std::to_string(g) + "x" +
                                 std::to_string(g) + " array");
            for (int k = 0; k < g; ++k) {
                if (!row.at(k).is_number())
                    throw InputError(std::string(key) + " entries must be numbers");
                m(i, k) = row.at(k).get<double>();
            }
        }
        return m;
    };
    RealMatrix re = parse_block("re");
    RealMatrix im = parse_block("im");
    double scale = 0.0;
    for (int i = 0; i < g; ++i)
        for (int k = 0; k < g; ++k)
            scale = std::max({scale, std::abs(re(i, k)), std::abs(im(i, k))});
    for (int i = 0; i < g; ++i)
        for (int k = i + 1; k < g; ++k)
            if (std::abs(re(i, k) - re(k, i)) > 1e-8 * std::max(scale, 1.0) ||
                std::abs(im(i, k) - im(k, i)) > 1e-8 * std::max(scale, 1.0))
                throw InputError("matrix is not symmetric");
    return to_complex(re, im);
}

json matrix_to_json(const ComplexMatrix& tau) {
    int g = tau.rows();
    json j;
    j["g"] = g;
    json re = json::array(), im = json::array();
    for (int i = 0; i < g; ++i) {
        json rrow = json::array(), irow = json::array();
        for (int k = 0; k < g; ++k) {
            rrow.push_back(tau(i, k).real());
            irow.push_back(tau(i, k).imag());
        }
        re.push_back(rrow);
        im.push_back(irow);
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

std::vector<cplx> parse_z(const std::string& text, int g) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            vals.push_back(std::stod(item, &pos));
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InputError("cannot parse z component: " + item);
        }
    }
    if (static_cast<int>(vals.size()) != 2 * g)
        throw InputError("--z needs " + std::to_string(2 * g) +
                         " comma-separated reals (re/im interleaved)");
    std::vector<cplx> z(g);
    for (int i = 0; i < g; ++i) z[i] = cplx(vals[2 * i], vals[2 * i + 1]);
    return z;
}

std::vector<uint8_t> parse_char_half(const std::string& text, int g) {
    std::vector<uint8_t> out;
    if (text.find(',') != std::string::npos) {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item == "0")
                out.push_back(0);
            else if (item == "1")
                out.push_back(1);
            else
                throw InputError("characteristic entries must be 0 or 1");
        }
    } else {
        for (char c : text) {
            if (c == '0')
                out.push_back(0);
            else if (c == '1')
                out.push_back(1);
            else
                throw InputError("characteristic entries must be 0 or 1");
        }
    }
    if (static_cast<int>(out.size()) != g)
        throw InputError("characteristic half must have " + std::to_string(g) + " entries");
    return out;
}

Characteristic parse_characteristic(const std::string& text, int g) {
    size_t sep = text.find(';');
    if (sep == std::string::npos)
        throw InputError("--char must look like eps;delta, e.g. 01;10");
    return Characteristic(parse_char_half(text.substr(0, sep), g),
                          parse_char_half(text.substr(sep + 1), g));
}

DerivativeSpec parse_derivs(const std::string& text, int g) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("--derivs must be a JSON array of vectors: ") + e.what());
    }
    if (!j.is_array()) throw InputError("--derivs must be a JSON array of vectors");
    std::vector<std::vector<cplx>> dirs;
    for (const json& vec : j) {
        if (!vec.is_array() || static_cast<int>(vec.size()) != g)
            throw InputError("each derivative direction needs " + std::to_string(g) +
                             " components");
        std::vector<cplx> k(g);
        for (int i = 0; i < g; ++i) {
            const json& c = vec.at(i);
            if (c.is_number()) {
                k[i] = cplx(c.get<double>(), 0.0);
            } else if (c.is_array() && c.size() == 2 && c.at(0).is_number() &&
                       c.at(1).is_number()) {
                k[i] = cplx(c.at(0).get<double>(), c.at(1).get<double>());
            } else {
                throw InputError("direction components must be numbers or [re, im] pairs");
            }
        }
        dirs.push_back(std::move(k));
    }
    return DerivativeSpec(dirs);
}

std::string format_complex(cplx v) {
    char buf[96];
    double re = v.real(), im = v.imag();
    std::snprintf(buf, sizeof(buf), "%.15f %c %.15fi", re, im < 0 ? '-' : '+', std::abs(im));
    return buf;
}

json complex_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

json char_to_json(const Characteristic& m) {
    json j;
    j["eps"] = m.eps();
    j["delta"] = m.delta();
    return j;
}

int run_eval(const std::string& file, const std::string& z_text, const std::string& char_text,
             const std::string& derivs_text, double eps, bool no_siegel, bool split,
             bool as_json) {
    ComplexMatrix tau = read_matrix_file(file);
    int g = tau.rows();
    std::vector<cplx> z = parse_z(z_text, g);
    Characteristic m =
        char_text.empty() ? Characteristic::zero(g) : parse_characteristic(char_text, g);
    DerivativeSpec derivs =
        derivs_text.empty() ? DerivativeSpec{} : parse_derivs(derivs_text, g);

    RiemannContext ctx =
        build_context(tau, eps, derivs.order(), !no_siegel, ellipsoid_cap_from_env());
    ThetaParts parts = theta_split(z, ctx, m, derivs);

    if (as_json) {
        json out;
        out["value"] = complex_to_json(parts.combined());
        if (split) {
            out["mantissa"] = complex_to_json(parts.mantissa);
            out["exponent"] = complex_to_json(parts.exponent);
        }
        out["siegel_reduced"] = !no_siegel;
        std::cout << out.dump() << "\n";
    } else {
        std::cout << format_complex(parts.combined()) << "\n";
        if (split) {
            std::cout << "mantissa: " << format_complex(parts.mantissa) << "\n";
            std::cout << "exponent: " << format_complex(parts.exponent) << "\n";
        }
    }
    return 0;
}

int run_reduce(const std::string& file) {
    ComplexMatrix tau = read_matrix_file(file);
    SiegelReduction red = siegel_reduce(tau);
    json out = matrix_to_json(red.tau);
    json gamma = json::array();
    for (int i = 0; i < red.gamma.mat.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < red.gamma.mat.cols(); ++j) row.push_back(red.gamma.mat(i, j));
        gamma.push_back(row);
    }
    out["gamma"] = gamma;
    out["stalled"] = red.stalled;
    std::cout << out.dump() << "\n";
    return 0;
}

int run_random(int g, uint64_t seed) {
    if (g < 1) throw InputError("genus must be >= 1");
    std::cout << matrix_to_json(random_siegel(g, seed)).dump() << "\n";
    return 0;
}

int run_schottky(const std::string& file, double tol, double eps) {
    ComplexMatrix tau = read_matrix_file(file);
    auto report = schottky_null(tau, eps, tol, ellipsoid_cap_from_env());
    if (!report) {
        std::cout << "none\n";
        return 0;
    }
    json out;
    out["characteristic"] = char_to_json(report->characteristic);
    out["theta"] = complex_to_json(report->theta_value);
    int g = report->hessian.rows();
    json hre = json::array(), him = json::array();
    for (int i = 0; i < g; ++i) {
        json rrow = json::array(), irow = json::array();
        for (int j = 0; j < g; ++j) {
            rrow.push_back(report->hessian(i, j).real());
            irow.push_back(report->hessian(i, j).imag());
        }
        hre.push_back(rrow);
        him.push_back(irow);
    }
    out["hessian"] = {{"re", hre}, {"im", him}};
    out["singular_values"] = report->singular_values;
    out["rank"] = report->rank;
    json eig = json::array();
    for (cplx e : report->eigenvalues) eig.push_back(complex_to_json(e));
    out["eigenvalues"] = eig;
    std::cout << out.dump() << "\n";
    return 0;
}

int run_bench(int g, int count, double eps) {
    if (g < 1 || count < 1) throw InputError("bench needs g >= 1 and count >= 1");
    long long cap = ellipsoid_cap_from_env();
    std::vector<double> build_times, eval_times;
    for (int i = 0; i < count; ++i) {
        ComplexMatrix tau = random_siegel(g, 1000003ULL + static_cast<uint64_t>(i));
        auto t0 = std::chrono::steady_clock::now();
        RiemannContext ctx = build_context(tau, eps, 0, true, cap);
        auto t1 = std::chrono::steady_clock::now();
        auto constants = even_theta_constants(ctx);
        auto t2 = std::chrono::steady_clock::now();
        (void)constants;
        build_times.push_back(std::chrono::duration<double>(t1 - t0).count());
        eval_times.push_back(std::chrono::duration<double>(t2 - t1).count());
    }
    auto stats = [](const std::vector<double>& v) {
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean);
        var /= static_cast<double>(v.size());
        return std::pair<double, double>(mean, std::sqrt(var));
    };
    auto [bm, bs] = stats(build_times);
    auto [em, es] = stats(eval_times);
    std::printf("build_context: mean %.6f s, sd %.6f s (%d samples)\n", bm, bs, count);
    std::printf("even_theta_constants: mean %.6f s, sd %.6f s (%d samples)\n", em, es, count);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Riemann theta function evaluator"};
    app.require_subcommand(1);

    std::string file, z_text, char_text, derivs_text;
    double eps = 1e-12;
    bool no_siegel = false, split = false, as_json = false;
    auto* eval = app.add_subcommand("eval", "evaluate theta at a point");
    eval->add_option("file", file, "matrix file (JSON: g, re, im)")->required();
    eval->add_option("--z", z_text, "2g comma-separated reals, re/im interleaved")->required();
    eval->add_option("--char", char_text, "characteristic eps;delta (e.g. 01;10)");
    eval->add_option("--derivs", derivs_text, "JSON array of direction vectors");
    eval->add_option("--eps", eps, "target absolute error");
    eval->add_flag("--no-siegel", no_siegel, "evaluate on tau as given");
    eval->add_flag("--split", split, "also print (mantissa, exponent) parts");
    eval->add_flag("--json", as_json, "JSON output");

    std::string rfile;
    auto* reduce = app.add_subcommand("reduce", "Siegel-reduce a matrix");
    reduce->add_option("file", rfile, "matrix file")->required();

    int rand_g = 1;
    uint64_t rand_seed = 0;
    auto* rnd = app.add_subcommand("random", "sample a random Riemann matrix");
    rnd->add_option("g", rand_g, "genus")->required();
    rnd->add_option("seed", rand_seed, "RNG seed (default 0)");

    std::string sfile;
    double tol = -1.0, s_eps = 1e-12;
    auto* schottky = app.add_subcommand("schottky-null", "vanishing theta null diagnostic");
    schottky->add_option("file", sfile, "matrix file")->required();
    schottky->add_option("--tol", tol, "null threshold (default 1e-6 * max constant)");
    schottky->add_option("--eps", s_eps, "target absolute error");

    int bench_g = 2, bench_count = 10;
    double bench_eps = 1e-12;
    auto* bench = app.add_subcommand("bench", "time context builds + constant scans");
    bench->add_option("g", bench_g, "genus")->required();
    bench->add_option("count", bench_count, "number of random samples")->required();
    bench->add_option("--eps", bench_eps, "target absolute error");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*eval) return run_eval(file, z_text, char_text, derivs_text, eps, no_siegel,
                                   split, as_json);
        if (*reduce) return run_reduce(rfile);
        if (*rnd) return run_random(rand_g, rand_seed);
        if (*schottky) return run_schottky(sfile, tol, s_eps);
        if (*bench) return run_bench(bench_g, bench_count, bench_eps);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotPositiveDefinite& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DegenerateBasis& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SingularTransform& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
