#include "vclab/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vclab/acceptance.hpp"
#include "vclab/compression.hpp"
#include "vclab/concept_class.hpp"
#include "vclab/generators.hpp"
#include "vclab/metric.hpp"
#include "vclab/pac.hpp"
#include "vclab/serialize.hpp"
#include "vclab/teaching.hpp"

namespace vclab {
namespace cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& out_path,
                  std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write file: " + out_path);
    f << text;
}

void emit(const Json& j, const std::string& out_path, std::ostream& out) {
    write_output(j.dump(2) + "\n", out_path, out);
}

LoadResult load_class_file(const std::string& path, std::ostream& err) {
    auto res = load_class(read_file(path));
    if (res.duplicates_removed)
        err << "note: duplicate concepts removed from " << path << "\n";
    return res;
}

Distribution load_distribution(const std::string& path, std::size_t n) {
    if (path.empty()) return Distribution::uniform(n);
    auto d = distribution_from_json(Json::parse(read_file(path)));
    if (d.weights.size() != n)
        throw std::invalid_argument("distribution length differs from the domain");
    return d;
}

// Numbers that fit a double exactly stay numeric; larger values go out as
// strings so reports stay bit-faithful.
Json json_big(const BigInt& v) {
    if (v >= 0 && v <= BigInt(std::uint64_t{1} << 53)) return v.convert_to<std::uint64_t>();
    return v.str();
}

EpsilonSpec eps_from_string(const std::string& s) {
    Rat r = parse_rational(s);
    return EpsilonSpec::from_ratio(boost::multiprecision::numerator(r),
                                   boost::multiprecision::denominator(r));
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Json bound_report_to_json(const BoundReport& r, const std::string& eps) {
    return Json{{"bound", r.bound},
                {"eps", eps},
                {"failures", r.failures},
                {"k_max", r.k_max},
                {"learner", r.learner},
                {"m", r.m},
                {"pass", r.pass},
                {"q_size", json_big(r.q_size)},
                {"rate", r.rate},
                {"seed", r.seed},
                {"std_error", r.std_error},
                {"t_max", r.t_max},
                {"trials", r.trials},
                {"vc", r.vc}};
}

int cmd_pack(const ConceptClass& cls, const std::string& eps_str,
             const std::string& dist_path, bool dual_side,
             const std::string& out_path, std::ostream& out) {
    auto eps = eps_from_string(eps_str);
    Rat eps_rat = parse_rational(eps_str);
    Json j;
    if (dual_side) {
        auto ap = dual_approx_set(cls, eps);
        const unsigned dd = std::min<unsigned>(
            63, 1u << (static_cast<unsigned>(cls.vc_dimension()) + 1));
        auto hb = haussler_bound(dd, eps_rat);
        Json pts = Json::array();
        for (auto p : ap.points) pts.push_back(p);
        Json rounding = Json::array();
        for (std::size_t x = 0; x < cls.domain_size(); ++x)
            rounding.push_back(ap.round(x));
        j = Json{{"dual", true},
                 {"dual_size", ap.dual.cls.size()},
                 {"eps", eps.str()},
                 {"haussler_tight", hb.tight},
                 {"haussler_weak", hb.weak},
                 {"members", pts},
                 {"rounding", rounding},
                 {"size", ap.points.size()},
                 {"within_bound", within_haussler(ap.points.size(), dd, eps_rat)}};
    } else {
        auto mu = load_distribution(dist_path, cls.domain_size());
        auto pk = greedy_packing(cls, mu, eps);
        const unsigned d = static_cast<unsigned>(cls.vc_dimension());
        auto hb = haussler_bound(d, eps_rat);
        Json members = Json::array();
        for (auto m : pk.members) members.push_back(m);
        Json rounding = Json::array();
        for (auto r : pk.round_to) rounding.push_back(r);
        j = Json{{"dual", false},
                 {"eps", eps.str()},
                 {"haussler_tight", hb.tight},
                 {"haussler_weak", hb.weak},
                 {"members", members},
                 {"rounding", rounding},
                 {"size", pk.members.size()},
                 {"vc", d},
                 {"within_bound", within_haussler(pk.members.size(), d, eps_rat)}};
    }
    emit(j, out_path, out);
    return 0;
}

void print_teaching_pretty(const TeachingReport& r, bool valid, std::ostream& out) {
    out << "concept " << r.bits.to_string() << " (index " << r.concept_index
        << "), method " << r.method << ", size " << r.points.size()
        << (valid ? "" : " INVALID") << "\n";
    for (std::size_t i = 0; i < r.points.size(); ++i)
        out << "  point " << r.points[i] << " -> " << int(r.labels[i]) << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"vclab: teaching sets, packings and sample compression for "
                 "finite boolean concept classes"};
    app.require_subcommand(1);

    std::string class_path, out_path, dist_path, in_path, eps_str, points_str;
    std::string method = "halving", family, learner = "consistent", scheme = "recursive";
    std::string level = "desk";
    std::vector<std::string> eps_list;
    std::vector<std::uint64_t> m_list;
    std::size_t target = 0, gen_n = 1, gen_size = 8;
    int gen_d = 1;
    std::uint64_t base_threshold = 0, budget = 1'000'000, seed = 0, trials = 1000;
    std::uint64_t fallback_threshold = 0, pairs = 10'000, cap = 0;
    bool pretty = false, dual_side = false, with_report = false, want_rtd = false;
    bool csv = false;

    auto add_class = [&](CLI::App* c) {
        c->add_option("-c,--class", class_path, "class file (text or JSON)")->required();
    };
    auto add_out = [&](CLI::App* c) { c->add_option("-o,--out", out_path, "output file"); };

    auto* c_vc = app.add_subcommand("vc", "domain size, class size and VC-dimension");
    add_class(c_vc);
    add_out(c_vc);

    auto* c_dual = app.add_subcommand("dual", "the dual class");
    add_class(c_dual);
    add_out(c_dual);
    bool dual_text = false;
    c_dual->add_flag("--text", dual_text, "emit the class text format");

    auto* c_teach = app.add_subcommand("teach", "teaching sets");
    add_class(c_teach);
    add_out(c_teach);
    c_teach->add_option("--method", method)
        ->check(CLI::IsMember({"exact", "halving", "pair_reduction", "three_six"}));
    c_teach->add_option("--target", target, "concept index (method exact)");
    c_teach->add_option("--cap", cap, "size cap (method exact)");
    c_teach->add_option("--fallback-threshold", fallback_threshold,
                        "class size at which pair_reduction switches to halving");
    c_teach->add_flag("--pretty", pretty);

    auto* c_rtd = app.add_subcommand("rtd", "recursive teaching dimension");
    add_class(c_rtd);
    add_out(c_rtd);
    c_rtd->add_flag("--pretty", pretty);

    auto* c_pack = app.add_subcommand("pack", "greedy maximal packing");
    add_class(c_pack);
    add_out(c_pack);
    c_pack->add_option("--eps", eps_str, "separation, e.g. 1/4")->required();
    c_pack->add_option("--dist", dist_path, "distribution JSON (uniform if omitted)");
    c_pack->add_flag("--dual", dual_side, "pack the dual class");

    auto* c_comp = app.add_subcommand("compress", "compress a labeled sample");
    add_class(c_comp);
    add_out(c_comp);
    c_comp->add_option("--target", target, "concept index providing the labels")->required();
    c_comp->add_option("--points", points_str, "sample points, e.g. 0,2,5-7")->required();
    c_comp->add_option("--base-threshold", base_threshold);
    c_comp->add_option("--scheme", scheme)->check(CLI::IsMember({"recursive", "base", "rank"}));
    c_comp->add_flag("--report", with_report, "wrap with a size report");

    auto* c_dec = app.add_subcommand("decompress", "reconstruct from a compressed sample");
    add_class(c_dec);
    add_out(c_dec);
    c_dec->add_option("--in", in_path, "compressed sample JSON")->required();
    c_dec->add_option("--base-threshold", base_threshold);
    c_dec->add_option("--scheme", scheme)->check(CLI::IsMember({"recursive", "base", "rank"}));

    auto* c_ver = app.add_subcommand("verify", "round-trip verification of the scheme");
    add_class(c_ver);
    add_out(c_ver);
    c_ver->add_option("--budget", budget, "exhaustive when |C|(2^n-1) <= budget");
    c_ver->add_option("--seed", seed);
    c_ver->add_option("--pairs", pairs, "sampled pairs when not exhaustive");
    c_ver->add_option("--base-threshold", base_threshold);

    auto* c_pac = app.add_subcommand("pac", "empirical generalization-bound check");
    add_class(c_pac);
    add_out(c_pac);
    c_pac->add_option("--target", target)->required();
    c_pac->add_option("--dist", dist_path);
    c_pac->add_option("--m", m_list, "sample size(s)")->required();
    c_pac->add_option("--eps", eps_str, "accuracy, e.g. 1/4")->required();
    c_pac->add_option("--trials", trials);
    c_pac->add_option("--seed", seed);
    c_pac->add_option("--learner", learner)
        ->check(CLI::IsMember({"consistent", "compression"}));
    c_pac->add_option("--base-threshold", base_threshold);
    c_pac->add_flag("--csv", csv, "emit CSV rows instead of JSON");

    auto* c_gen = app.add_subcommand("gen", "generate a structured or random class");
    add_out(c_gen);
    c_gen->add_option("--family", family)
        ->required()
        ->check(CLI::IsMember({"singletons", "intervals", "cube", "ball", "random",
                               "random_vc", "random_36"}));
    c_gen->add_option("--n", gen_n, "domain size")->required();
    c_gen->add_option("--d", gen_d, "dimension parameter (ball, random_vc)");
    c_gen->add_option("--size", gen_size, "class size (random families)");
    c_gen->add_option("--seed", seed);

    auto* c_an = app.add_subcommand("analyze", "class report: dimensions, packings, compression");
    add_class(c_an);
    add_out(c_an);
    c_an->add_option("--eps", eps_list, "packing separation(s)");
    c_an->add_flag("--rtd", want_rtd, "include the RT decomposition");
    c_an->add_flag("--pretty", pretty);

    auto* c_suite = app.add_subcommand("suite", "run the acceptance suite");
    c_suite->add_option("--level", level)->check(CLI::IsMember({"desk"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (c_vc->parsed()) {
            auto res = load_class_file(class_path, err);
            emit(Json{{"n", res.cls.domain_size()},
                      {"size", res.cls.size()},
                      {"vc", res.cls.vc_dimension()}},
                 out_path, out);
            return 0;
        }

        if (c_dual->parsed()) {
            auto res = load_class_file(class_path, err);
            auto d = res.cls.dual();
            if (dual_text) {
                write_output(to_class_text(d.cls), out_path, out);
                return 0;
            }
            Json rows = Json::array();
            for (const auto& r : d.cls.rows()) rows.push_back(r.to_string());
            emit(Json{{"concepts", rows},
                      {"n", d.cls.domain_size()},
                      {"size", d.cls.size()},
                      {"vc", d.cls.vc_dimension()}},
                 out_path, out);
            return 0;
        }

        if (c_teach->parsed()) {
            auto res = load_class_file(class_path, err);
            const auto& cls = res.cls;
            if (method == "exact") {
                if (target >= cls.size())
                    throw std::invalid_argument("target concept index out of range");
                auto set = min_teaching_set(cls, target, cap == 0 ? npos : cap);
                if (!set) {
                    emit(Json{{"cap", cap}, {"cap_exceeded", true}, {"concept_index", target}},
                         out_path, out);
                    return 1;
                }
                TeachingReport r;
                r.concept_index = target;
                r.bits = cls.row(target);
                r.points = *set;
                for (auto p : r.points) r.labels.push_back(r.bits.get(p) ? 1 : 0);
                r.method = "exact";
                bool valid = is_teaching_set(cls, target, r.points);
                if (pretty)
                    print_teaching_pretty(r, valid, out);
                else
                    emit(teaching_report_to_json(r, valid), out_path, out);
                return 0;
            }
            TeachingReport r;
            if (method == "halving") r = halving_teaching_concept(cls);
            else if (method == "pair_reduction") r = pair_reduction_teaching_concept(cls, fallback_threshold).report;
            else r = three_six_teaching(cls);
            bool valid = is_teaching_set(cls, r.concept_index, r.points);
            if (pretty)
                print_teaching_pretty(r, valid, out);
            else
                emit(teaching_report_to_json(r, valid), out_path, out);
            return 0;
        }

        if (c_rtd->parsed()) {
            auto res = load_class_file(class_path, err);
            auto rt = rt_dimension(res.cls);
            if (pretty) {
                out << "rt_dimension " << rt.dimension << "\n";
                for (std::size_t i = 0; i < rt.layers.size(); ++i) {
                    out << "layer " << i << " (min size " << rt.layers[i].set_size << "):";
                    for (const auto& [idx, set] : rt.layers[i].members)
                        out << " " << res.cls.row(idx).to_string();
                    out << "\n";
                }
                return 0;
            }
            emit(rt_to_json(res.cls, rt), out_path, out);
            return 0;
        }

        if (c_pack->parsed()) {
            auto res = load_class_file(class_path, err);
            return cmd_pack(res.cls, eps_str, dist_path, dual_side, out_path, out);
        }

        if (c_comp->parsed()) {
            auto res = load_class_file(class_path, err);
            const auto& cls = res.cls;
            if (target >= cls.size())
                throw std::invalid_argument("target concept index out of range");
            auto pts = parse_points(points_str);
            auto sample = LabeledSample::from_concept(cls.row(target), pts);
            if (scheme == "base" || scheme == "rank") {
                auto kept = scheme == "base" ? base_compress(cls, sample)
                                             : rank_compress(cls, sample);
                emit(Json{{"Z", labeled_sample_to_json(kept)}, {"scheme", scheme}},
                     out_path, out);
                return 0;
            }
            Scheme eng(cls, SchemeParams{base_threshold});
            CompressionTrace trace;
            auto cs = eng.compress(sample, &trace);
            if (with_report) {
                emit(Json{{"compressed", compressed_to_json(cs)},
                          {"report", size_report_to_json(size_report(cs, trace))}},
                     out_path, out);
            } else {
                emit(compressed_to_json(cs), out_path, out);
            }
            return 0;
        }

        if (c_dec->parsed()) {
            auto res = load_class_file(class_path, err);
            Json j = Json::parse(read_file(in_path));
            if (scheme == "base" || scheme == "rank") {
                std::vector<std::pair<std::size_t, std::uint8_t>> items;
                for (const auto& e : j.at("Z"))
                    items.emplace_back(e[0].get<std::size_t>(), e[1].get<std::uint8_t>());
                auto kept = LabeledSample::make(std::move(items));
                BitVec h = scheme == "base" ? base_reconstruct(res.cls, kept)
                                            : rank_reconstruct(res.cls, kept);
                emit(Json{{"hypothesis", h.to_string()}}, out_path, out);
                return 0;
            }
            if (j.contains("compressed")) j = j["compressed"];
            auto cs = compressed_from_json(j);
            Scheme eng(res.cls, SchemeParams{base_threshold});
            emit(Json{{"hypothesis", eng.reconstruct(cs).to_string()}}, out_path, out);
            return 0;
        }

        if (c_ver->parsed()) {
            auto res = load_class_file(class_path, err);
            VerifyOptions opts;
            opts.budget = budget;
            opts.seed = seed;
            opts.sample_pairs = pairs;
            auto rep = verify_scheme(res.cls, SchemeParams{base_threshold}, opts);
            emit(verify_report_to_json(rep), out_path, out);
            return rep.ok() ? 0 : 1;
        }

        if (c_pac->parsed()) {
            auto res = load_class_file(class_path, err);
            PacExperiment exp(res.cls);
            exp.target = target;
            exp.mu = load_distribution(dist_path, res.cls.domain_size());
            exp.eps = parse_rational(eps_str);
            exp.trials = static_cast<std::uint32_t>(trials);
            exp.seed = seed;
            bool all_pass = true;
            Json arr = Json::array();
            std::string csv_text =
                "learner,m,eps,trials,seed,failures,rate,std_error,bound,vc,k_max,t_max,"
                "q_size,pass\n";
            for (auto m : m_list) {
                exp.m = m;
                BoundReport r = learner == "consistent"
                                    ? simulate_consistency_failure(exp)
                                    : simulate_compression_learner(
                                          exp, SchemeParams{base_threshold});
                all_pass = all_pass && r.pass;
                arr.push_back(bound_report_to_json(r, rational_to_string(exp.eps)));
                csv_text += r.learner + "," + std::to_string(r.m) + "," +
                            rational_to_string(exp.eps) + "," + std::to_string(r.trials) +
                            "," + std::to_string(r.seed) + "," + std::to_string(r.failures) +
                            "," + fmt_double(r.rate) + "," + fmt_double(r.std_error) + "," +
                            fmt_double(r.bound) + "," + std::to_string(r.vc) + "," +
                            std::to_string(r.k_max) + "," + std::to_string(r.t_max) + "," +
                            r.q_size.str() + "," + (r.pass ? "true" : "false") + "\n";
            }
            if (csv)
                write_output(csv_text, out_path, out);
            else
                emit(arr, out_path, out);
            return all_pass ? 0 : 1;
        }

        if (c_gen->parsed()) {
            ConceptClass cls = [&] {
                if (family == "singletons") return gen::singletons_with_empty(gen_n);
                if (family == "intervals") return gen::intervals(gen_n);
                if (family == "cube") return gen::full_cube(gen_n);
                if (family == "ball") return gen::hamming_ball(gen_n, gen_d);
                if (family == "random") return gen::random_class(gen_n, gen_size, seed);
                if (family == "random_vc")
                    return gen::random_vc_bounded(gen_n, gen_d, gen_size, seed);
                return gen::random_36(gen_n, gen_size, seed);
            }();
            write_output(to_class_text(cls), out_path, out);
            return 0;
        }

        if (c_an->parsed()) {
            auto res = load_class_file(class_path, err);
            const auto& cls = res.cls;
            const int vc = cls.vc_dimension();
            auto d = cls.dual();
            const int dual_vc = d.cls.vc_dimension();
            BigInt sauer = sauer_bound(static_cast<unsigned>(cls.domain_size()),
                                       static_cast<unsigned>(vc));
            Json packings = Json::array();
            for (const auto& es : eps_list) {
                auto eps = eps_from_string(es);
                Rat eps_rat = parse_rational(es);
                auto primal = greedy_packing(cls, Distribution::uniform(cls.domain_size()), eps);
                auto ap = dual_approx_set(cls, eps);
                const unsigned dd =
                    std::min<unsigned>(63, 1u << (static_cast<unsigned>(vc) + 1));
                packings.push_back(
                    Json{{"dual_size", ap.points.size()},
                         {"dual_within_bound", within_haussler(ap.points.size(), dd, eps_rat)},
                         {"eps", eps.str()},
                         {"primal_size", primal.members.size()},
                         {"primal_tight_bound", haussler_bound(vc, eps_rat).tight},
                         {"primal_within_bound",
                          within_haussler(primal.members.size(), vc, eps_rat)}});
            }
            std::vector<std::size_t> all_pts(cls.domain_size());
            for (std::size_t i = 0; i < all_pts.size(); ++i) all_pts[i] = i;
            Scheme eng(cls, SchemeParams{base_threshold});
            CompressionTrace trace;
            auto cs = eng.compress(LabeledSample::from_concept(cls.row(0), all_pts), &trace);
            Json j{{"class",
                    Json{{"dual_size", d.cls.size()},
                         {"dual_vc", dual_vc},
                         {"dual_vc_within_bound", dual_vc <= (1 << (vc + 1))},
                         {"n", cls.domain_size()},
                         {"sauer_bound", json_big(sauer)},
                         {"sauer_ok", BigInt(cls.size()) <= sauer},
                         {"size", cls.size()},
                         {"vc", vc}}},
                   {"compression", size_report_to_json(size_report(cs, trace))},
                   {"packings", packings}};
            if (want_rtd) j["rtd"] = rt_to_json(cls, rt_dimension(cls));
            if (pretty) {
                out << "n " << cls.domain_size() << ", size " << cls.size() << ", vc " << vc
                    << ", dual vc " << dual_vc << "\n";
                for (const auto& p : packings)
                    out << "eps " << p["eps"].get<std::string>() << ": primal "
                        << p["primal_size"] << ", dual " << p["dual_size"] << "\n";
                return 0;
            }
            emit(j, out_path, out);
            return 0;
        }

        if (c_suite->parsed()) {
            acceptance::Options opts;
            opts.vclab_path = argv[0];
            auto results = acceptance::run_all(opts, out);
            return acceptance::all_pass(results) ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace cli
}  // namespace vclab
