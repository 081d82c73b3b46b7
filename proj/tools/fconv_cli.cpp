#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fconv/cyclicconv.hpp"
#include "fconv/engine.hpp"
#include "fconv/json_io.hpp"
#include "fconv/oracle.hpp"
#include "fconv/prng.hpp"
#include "fconv/query.hpp"

namespace {

using nlohmann::json;
using namespace fconv;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

SwapPolicy parse_swap(const std::string& s) {
    if (s == "auto") return SwapPolicy::Auto;
    if (s == "on") return SwapPolicy::On;
    if (s == "off") return SwapPolicy::Off;
    throw CLI::ValidationError("--swap must be auto, on or off");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error(path + ": cannot open for writing");
    return out;
}

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

struct PartitionArgs {
    std::string fn_file;
    std::string out_file;
    std::string check_file;
    std::string dot_file;
    std::string swap = "auto";
    bool greedy = false;
};

int cmd_partition(const PartitionArgs& args) {
    FunctionTable f = load_function_table(args.fn_file);

    if (!args.check_file.empty()) {
        CyclicPartition p = load_partition(args.check_file, f);
        auto violations = validate_partition(f, p);
        json report;
        report["cost"] = partition_cost(p);
        report["valid"] = violations.empty();
        report["violations"] = violations;
        std::cout << report.dump(2) << "\n";
        return violations.empty() ? kExitOk : kExitVerifyFailed;
    }

    BuildOptions opts;
    opts.swap = parse_swap(args.swap);
    opts.pairing = args.greedy ? RowPairing::Greedy : RowPairing::Sequential;
    CyclicPartition p = build_partition(f, opts);
    auto violations = validate_partition(f, p);
    long long cost = partition_cost(p);
    long long bound = partition_cost_bound(f, opts.swap);

    std::stringstream partition_doc;
    save_partition(partition_doc, f, p);
    json report = json::parse(partition_doc.str());
    report["bound"] = bound;
    report["valid"] = violations.empty();
    if (!violations.empty()) report["violations"] = violations;
    std::cout << report.dump(2) << "\n";

    if (!args.out_file.empty()) {
        auto out = open_out(args.out_file);
        out << partition_doc.str();
    }
    if (!args.dot_file.empty()) {
        std::vector<TwoRowDecomposition> decs;
        for (int a = 0; a + 1 < f.dom_l.size(); a += 2)
            decs.push_back(two_row_decompose(f, a, a + 1));
        auto out = open_out(args.dot_file);
        export_dot(out, f, decs);
    }
    return violations.empty() && cost <= bound ? kExitOk : kExitVerifyFailed;
}

struct ConvolveArgs {
    std::string fn_file, g_file, h_file, out_file;
    std::string method = "partition";
    std::string swap = "auto";
    bool greedy = false;
    bool explain = false;
    int jobs = 0;
};

json explain_plans(const FunctionTable& f, const CyclicPartition& p, const TensorFunction& g,
                   const TensorFunction& h) {
    json plans = json::array();
    std::set<int> seen;
    for (const auto& m : p.minors) {
        if (!seen.insert(m.k).second) continue;
        Radices shape{uniform_radices(m.k, g.arity)};
        Int bound = std::max<Int>(g.max_abs, 1) * std::max<Int>(h.max_abs, 1);
        for (int i = 0; i < g.arity; ++i)
            bound *= static_cast<Int>(m.rows_a.size() * m.cols_b.size());
        PrimePlan plan = make_prime_plan(shape, bound);
        json pj;
        pj["radices"] = shape.r;
        pj["bound"] = plan.bound;
        pj["primes"] = plan.primes;
        pj["roots"] = plan.roots;
        plans.push_back(std::move(pj));
    }
    return plans;
}

int cmd_convolve(const ConvolveArgs& args) {
    FunctionTable f = load_function_table(args.fn_file);
    TensorFunction g = load_tensor(args.g_file, f);
    TensorFunction h = load_tensor(args.h_file, f);

    TensorFunction out = TensorFunction::zeros(f.dom_t, g.arity);
    json report;
    if (args.method == "naive") {
        out = naive_convolve(f, g, h);
        report["method"] = "naive";
    } else if (args.method == "partition") {
        BuildOptions bopts;
        bopts.swap = parse_swap(args.swap);
        bopts.pairing = args.greedy ? RowPairing::Greedy : RowPairing::Sequential;
        CyclicPartition p = build_partition(f, bopts);
        ConvolveOptions copts;
        copts.jobs = args.jobs;
        WorkStats stats;
        out = convolve(f, p, g, h, copts, &stats);
        report["method"] = "partition";
        report["cost"] = partition_cost(p);
        report["bound"] = partition_cost_bound(f, bopts.swap);
        report["work"] = stats.per_type_work;
        report["types"] = stats.types_total;
        report["types_skipped"] = stats.types_skipped;
        if (args.explain) report["plans"] = explain_plans(f, p, g, h);
    } else {
        throw CLI::ValidationError("--method must be partition or naive");
    }

    if (!args.out_file.empty()) {
        auto file = open_out(args.out_file);
        save_tensor(file, out, "T");
        std::cout << report.dump(2) << "\n";
    } else {
        save_tensor(std::cout, out, "T");
    }
    return kExitOk;
}

struct QueryArgs {
    std::string fn_file, g_file, h_file;
    std::string vector_arg;
    std::string method = "trace";
    std::string pad_l, pad_r;
};

int cmd_query(const QueryArgs& args) {
    FunctionTable f = load_function_table(args.fn_file);
    TensorFunction g = load_tensor(args.g_file, f);
    TensorFunction h = load_tensor(args.h_file, f);

    std::vector<int> v;
    std::stringstream ss(args.vector_arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int idx = f.dom_t.find(item);
        if (idx < 0) throw std::invalid_argument("query vector label not in T: " + item);
        v.push_back(idx);
    }
    if (static_cast<int>(v.size()) != g.arity)
        throw std::invalid_argument("query vector must have n labels");

    Int result = 0;
    if (args.method == "naive") {
        result = naive_query(f, g, h, v);
    } else if (args.method == "trace") {
        QueryOptions opts;
        if (!args.pad_l.empty()) opts.pad_l = f.dom_l.index_of(args.pad_l);
        if (!args.pad_r.empty()) opts.pad_r = f.dom_r.index_of(args.pad_r);
        result = query(f, g, h, v, opts);
    } else {
        throw CLI::ValidationError("--method must be trace or naive");
    }
    std::cout << result << "\n";
    return kExitOk;
}

struct VerifyArgs {
    std::string fn_file;
    bool random = false;
    bool exhaustive = false;
    std::vector<int> d_list{2};
    std::vector<int> n_list{2};
    int trials = 20;
    std::uint64_t seed = 1;
    Int m = 10;
    std::string swap = "auto";
    int jobs = 0;
    bool inject_fault = false;
};

int cmd_verify(const VerifyArgs& args) {
    BuildOptions bopts;
    bopts.swap = parse_swap(args.swap);
    ConvolveOptions copts;
    copts.jobs = args.jobs;
    Rng rng(args.seed);
    std::cout << "verify seed=" << args.seed << " M=" << args.m << "\n";

    long long checked = 0;
    auto check_one = [&](const FunctionTable& f, int n) -> bool {
        TensorFunction g = random_tensor(rng, f.dom_l, n, args.m);
        TensorFunction h = random_tensor(rng, f.dom_r, n, args.m);
        CyclicPartition p = build_partition(f, bopts);
        TensorFunction got = convolve(f, p, g, h, copts);
        if (args.inject_fault && !got.values.empty()) ++got.values[0];
        TensorFunction want = naive_convolve(f, g, h);
        if (got.values != want.values) {
            std::cout << "MISMATCH: convolve disagrees with the oracle (n=" << n << ")\n";
            return false;
        }
        std::vector<int> v = random_vector(rng, f.dom_t.size(), n);
        Int qgot = query(f, g, h, v);
        if (args.inject_fault) ++qgot;
        if (qgot != want.at(v)) {
            std::cout << "MISMATCH: query disagrees with the oracle (n=" << n << ")\n";
            return false;
        }
        ++checked;
        return true;
    };

    if (args.exhaustive) {
        for (int d : args.d_list) {
            std::uint64_t count = 1;
            for (int i = 0; i < d * d; ++i) {
                count *= static_cast<std::uint64_t>(d);
                if (count > 200'000)
                    throw std::invalid_argument("exhaustive sweep too large; use --random");
            }
            for (int n : args.n_list) {
                for (std::uint64_t code = 0; code < count; ++code) {
                    if (!check_one(square_table_from_code(d, code), n)) return kExitVerifyFailed;
                }
                std::cout << "exhaustive D=" << d << " n=" << n << ": functions=" << count
                          << " ok\n";
            }
        }
    } else if (!args.fn_file.empty()) {
        FunctionTable f = load_function_table(args.fn_file);
        for (int n : args.n_list) {
            for (int t = 0; t < args.trials; ++t)
                if (!check_one(f, n)) return kExitVerifyFailed;
            std::cout << "file fn n=" << n << ": trials=" << args.trials << " ok\n";
        }
    } else {
        for (int d : args.d_list) {
            for (int n : args.n_list) {
                for (int t = 0; t < args.trials; ++t)
                    if (!check_one(random_square_table(rng, d), n)) return kExitVerifyFailed;
                std::cout << "random D=" << d << " n=" << n << ": trials=" << args.trials
                          << " ok\n";
            }
        }
    }
    std::cout << "verify ok checks=" << checked << "\n";
    return kExitOk;
}

struct BenchArgs {
    std::string fn_file;
    std::string builtin = "random";
    std::vector<int> d_list{2};
    std::vector<int> n_list{8};
    std::uint64_t seed = 1;
    Int m = 10;
    std::string method = "both";
    std::string swap = "auto";
    int jobs = 0;
};

FunctionTable builtin_table(const std::string& name, int d, Rng& rng) {
    if (name == "addmod") {
        FiniteDomain dom = numbered_domain(d);
        std::vector<int> table(static_cast<std::size_t>(d) * d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                table[static_cast<std::size_t>(a) * d + b] = (a + b) % d;
        return FunctionTable::make(dom, dom, dom, std::move(table));
    }
    if (name == "and") {
        if (d != 2) throw std::invalid_argument("builtin 'and' needs --D 2");
        FiniteDomain dom = numbered_domain(2);
        return FunctionTable::make(dom, dom, dom, {0, 0, 0, 1});
    }
    if (name == "random") return random_square_table(rng, d);
    throw CLI::ValidationError("--builtin must be addmod, and or random");
}

int cmd_bench(const BenchArgs& args) {
    Rng rng(args.seed);
    BuildOptions bopts;
    bopts.swap = parse_swap(args.swap);
    ConvolveOptions copts;
    copts.jobs = args.jobs;
    bool run_engine = args.method != "naive";
    bool run_naive = args.method != "partition";

    std::cout << "seed=" << args.seed << "\n";
    std::cout << "D\tn\tcost\twork\tengine_ms\tnaive_ms\n";
    for (int d : args.d_list) {
        for (int n : args.n_list) {
            FunctionTable f = args.fn_file.empty() ? builtin_table(args.builtin, d, rng)
                                                   : load_function_table(args.fn_file);
            TensorFunction g = random_tensor(rng, f.dom_l, n, args.m);
            TensorFunction h = random_tensor(rng, f.dom_r, n, args.m);
            CyclicPartition p = build_partition(f, bopts);

            std::cout << d << "\t" << n << "\t" << partition_cost(p) << "\t"
                      << work_count(p, n) << "\t";
            if (run_engine) {
                auto start = std::chrono::steady_clock::now();
                TensorFunction out = convolve(f, p, g, h, copts);
                std::cout << ms_since(start);
            } else {
                std::cout << "-";
            }
            std::cout << "\t";
            if (run_naive) {
                try {
                    auto start = std::chrono::steady_clock::now();
                    TensorFunction out = naive_convolve(f, g, h);
                    std::cout << ms_since(start);
                } catch (const std::invalid_argument&) {
                    std::cout << "refused";
                }
            } else {
                std::cout << "-";
            }
            std::cout << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized f-convolution via cyclic partitions"};
    app.require_subcommand(1);

    PartitionArgs pa;
    auto* sp = app.add_subcommand("partition", "build or check a cyclic partition");
    sp->add_option("fn", pa.fn_file, "function table JSON")->required();
    sp->add_option("-o,--out", pa.out_file, "write partition JSON here");
    sp->add_option("--check", pa.check_file, "validate this partition file instead of building");
    sp->add_option("--swap", pa.swap, "L/R orientation: auto|on|off");
    sp->add_flag("--greedy-rows", pa.greedy, "greedy row pairing heuristic");
    sp->add_option("--dot", pa.dot_file, "write representation graphs as Graphviz");

    ConvolveArgs ca;
    auto* sc = app.add_subcommand("convolve", "compute g (*)_f h");
    sc->add_option("fn", ca.fn_file, "function table JSON")->required();
    sc->add_option("gfile", ca.g_file, "left tensor JSON")->required();
    sc->add_option("hfile", ca.h_file, "right tensor JSON")->required();
    sc->add_option("-o,--out", ca.out_file, "write result tensor here");
    sc->add_option("--method", ca.method, "partition|naive");
    sc->add_option("--swap", ca.swap, "L/R orientation: auto|on|off");
    sc->add_flag("--greedy-rows", ca.greedy, "greedy row pairing heuristic");
    sc->add_flag("--explain", ca.explain, "report chosen primes and roots");
    sc->add_option("--jobs", ca.jobs, "worker cap (env FCONV_JOBS)");

    QueryArgs qa;
    auto* sq = app.add_subcommand("query", "compute a single entry (g (*)_f h)(v)");
    sq->add_option("fn", qa.fn_file, "function table JSON")->required();
    sq->add_option("gfile", qa.g_file, "left tensor JSON")->required();
    sq->add_option("hfile", qa.h_file, "right tensor JSON")->required();
    sq->add_option("--vector", qa.vector_arg, "comma-separated T labels")->required();
    sq->add_option("--method", qa.method, "trace|naive");
    sq->add_option("--pad-l", qa.pad_l, "L padding element for odd n");
    sq->add_option("--pad-r", qa.pad_r, "R padding element for odd n");

    VerifyArgs va;
    auto* sv = app.add_subcommand("verify", "compare engine and query against the oracle");
    sv->add_option("fn", va.fn_file, "fixed function table JSON");
    sv->add_flag("--random", va.random, "random function per trial (default)");
    sv->add_flag("--exhaustive", va.exhaustive, "sweep all functions for each D");
    sv->add_option("--D", va.d_list, "domain sizes")->delimiter(',');
    sv->add_option("--n", va.n_list, "arities")->delimiter(',');
    sv->add_option("--trials", va.trials, "trials per configuration");
    sv->add_option("--seed", va.seed, "PRNG seed");
    sv->add_option("--M", va.m, "value bound");
    sv->add_option("--swap", va.swap, "L/R orientation: auto|on|off");
    sv->add_option("--jobs", va.jobs, "worker cap");
    sv->add_flag("--inject-fault", va.inject_fault)->group("");

    BenchArgs ba;
    auto* sb = app.add_subcommand("bench", "time the engine against the naive algorithm");
    sb->add_option("fn", ba.fn_file, "fixed function table JSON");
    sb->add_option("--builtin", ba.builtin, "addmod|and|random");
    sb->add_option("--D", ba.d_list, "domain sizes")->delimiter(',');
    sb->add_option("--n", ba.n_list, "arities")->delimiter(',');
    sb->add_option("--seed", ba.seed, "PRNG seed");
    sb->add_option("--M", ba.m, "value bound");
    sb->add_option("--method", ba.method, "both|partition|naive");
    sb->add_option("--swap", ba.swap, "L/R orientation: auto|on|off");
    sb->add_option("--jobs", ba.jobs, "worker cap");

    try {
        app.parse(argc, argv);
        if (sp->parsed()) return cmd_partition(pa);
        if (sc->parsed()) return cmd_convolve(ca);
        if (sq->parsed()) return cmd_query(qa);
        if (sv->parsed()) return cmd_verify(va);
        if (sb->parsed()) return cmd_bench(ba);
        return kExitUsage;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
