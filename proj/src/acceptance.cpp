#include "vclab/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "vclab/compression.hpp"
#include "vclab/concept_class.hpp"
#include "vclab/generators.hpp"
#include "vclab/metric.hpp"
#include "vclab/pac.hpp"
#include "vclab/serialize.hpp"
#include "vclab/teaching.hpp"

namespace vclab {
namespace acceptance {

namespace {

namespace fs = std::filesystem;

struct SuiteClass {
    std::string name;
    ConceptClass cls;
};

std::vector<SuiteClass> build_suite() {
    std::vector<SuiteClass> suite;
    for (std::size_t n = 3; n <= 8; ++n)
        suite.push_back({"singletons" + std::to_string(n), gen::singletons_with_empty(n)});
    for (std::size_t n = 3; n <= 8; ++n)
        suite.push_back({"intervals" + std::to_string(n), gen::intervals(n)});
    for (std::size_t n = 2; n <= 4; ++n)
        suite.push_back({"cube" + std::to_string(n), gen::full_cube(n)});
    suite.push_back({"ball4_1", gen::hamming_ball(4, 1)});
    suite.push_back({"ball4_2", gen::hamming_ball(4, 2)});
    suite.push_back({"ball5_2", gen::hamming_ball(5, 2)});
    for (std::size_t k = 0; k < 20; ++k) {
        const std::size_t n = 4 + k % 5;
        const std::size_t size = std::min<std::size_t>(std::size_t{1} << n, 6 + 2 * k);
        suite.push_back({"random" + std::to_string(k),
                         gen::random_class(n, size, 1000 + k)});
    }
    for (std::size_t k = 0; k < 10; ++k) {
        // (3,6) classes on few points saturate early, so cap the size at n+5.
        const std::size_t n = 5 + k % 4;
        const std::size_t size = std::min<std::size_t>(6 + k, n + 5);
        suite.push_back({"class36_" + std::to_string(k),
                         gen::random_36(n, size, 2000 + k)});
    }
    return suite;
}

// Exhaustive packing checker, independent of the greedy construction:
// strict pairwise separation, maximality, and the rounding contract.
std::optional<std::string> check_packing(const ConceptClass& cls, const Distribution& mu,
                                         const EpsilonSpec& eps, const Packing& p) {
    if (p.members.empty()) return "packing is empty";
    for (std::size_t a = 0; a < p.members.size(); ++a)
        for (std::size_t b = a + 1; b < p.members.size(); ++b) {
            Rat d = dist(cls.row(p.members[a]), cls.row(p.members[b]), mu);
            if (eps.compare(d) >= 0) return "members not strictly separated";
        }
    if (p.round_to.size() != cls.size()) return "rounding map has the wrong length";
    for (std::size_t i = 0; i < cls.size(); ++i) {
        const std::size_t r = p.round_to[i];
        if (std::find(p.members.begin(), p.members.end(), r) == p.members.end())
            return "rounding target is not a member";
        Rat d = dist(cls.row(i), cls.row(r), mu);
        if (eps.compare(d) < 0) return "rounded concept is farther than eps";
        if (p.round_to[r] != r) return "rounding is not idempotent on members";
    }
    for (auto m : p.members)
        if (p.round_to[m] != m) return "member does not round to itself";
    return std::nullopt;
}

std::vector<std::size_t> naive_min_teaching_set(const ConceptClass& cls, std::size_t idx) {
    const std::size_t n = cls.domain_size();
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<std::size_t> found;
        bool hit = for_each_subset(n, k, [&](std::span<const std::size_t> s) {
            if (is_teaching_set(cls, idx, s)) {
                found.assign(s.begin(), s.end());
                return true;
            }
            return false;
        });
        if (hit) return found;
    }
    return {};
}

std::string read_all(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Runner {
    Options opts;
    std::ostream& log;
    std::vector<CriterionResult> results;
    std::vector<SuiteClass> suite = build_suite();

    template <class F>
    void criterion(int id, const std::string& name, F body) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        const auto start = std::chrono::steady_clock::now();
        try {
            r.detail = body(r.pass);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1fs", r.seconds);
        log << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << id << " (" << name
            << "): " << r.detail << " [" << buf << "]\n"
            << std::flush;
        results.push_back(std::move(r));
    }
};

}  // namespace

std::vector<CriterionResult> run_all(const Options& opts, std::ostream& log) {
    Runner R{opts, log, {}, build_suite()};

    // Round-trip runs are shared between criteria 1 and 2.
    std::uint64_t c1_pairs = 0, c1_failures = 0;
    std::uint64_t lemma_viol = 0, shrink_viol = 0, case1 = 0, case2 = 0;

    R.criterion(1, "compression round-trip", [&](bool& pass) {
        for (const auto& sc : R.suite) {
            for (std::uint64_t thr : {std::uint64_t{0}, std::uint64_t{4}}) {
                VerifyOptions vo;
                auto rep = verify_scheme(sc.cls, SchemeParams{thr}, vo);
                c1_pairs += rep.pairs;
                c1_failures += rep.failures + rep.collision_violations +
                               (rep.malformed_rejected ? 0 : 1);
                lemma_viol += rep.level_invariant_violations;
                shrink_viol += rep.shrink_violations;
                if (thr == 4) {
                    case1 += rep.case1_levels;
                    case2 += rep.case2_levels;
                }
                if (!rep.exhaustive) ++c1_failures;
            }
        }
        pass = c1_failures == 0;
        return std::to_string(c1_pairs) + " exhaustive pairs x 2 thresholds, " +
               std::to_string(c1_failures) + " failures";
    });

    R.criterion(2, "per-level inequalities in forced recursion", [&](bool& pass) {
        pass = lemma_viol == 0 && shrink_viol == 0 && case1 > 0 && case2 > 0;
        return std::to_string(case1) + " unfaithful / " + std::to_string(case2) +
               " faithful levels, " + std::to_string(lemma_viol) + " invariant and " +
               std::to_string(shrink_viol) + " shrinkage violations";
    });

    R.criterion(3, "base and rank scheme sizes and round-trips", [&](bool& pass) {
        std::uint64_t checked = 0, bad = 0;
        for (const auto& sc : R.suite) {
            const auto& cls = sc.cls;
            const std::size_t n = cls.domain_size();
            const std::size_t log_cap = static_cast<std::size_t>(
                std::floor(std::log2(static_cast<double>(cls.size()))));
            const std::size_t rank = matrix_rank(cls);
            for (std::size_t ci = 0; ci < cls.size(); ++ci) {
                for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
                    std::vector<std::size_t> pts;
                    for (std::size_t p = 0; p < n; ++p)
                        if ((mask >> p) & 1) pts.push_back(p);
                    auto sample = LabeledSample::from_concept(cls.row(ci), pts);
                    ++checked;
                    auto kept = base_compress(cls, sample);
                    if (kept.size() > log_cap) ++bad;
                    BitVec h = base_reconstruct(cls, kept);
                    for (auto p : pts)
                        if (h.get(p) != cls.row(ci).get(p)) {
                            ++bad;
                            break;
                        }
                    auto rkept = rank_compress(cls, sample);
                    if (rkept.size() > rank) ++bad;
                    BitVec rh = rank_reconstruct(cls, rkept);
                    for (auto p : pts)
                        if (rh.get(p) != cls.row(ci).get(p)) {
                            ++bad;
                            break;
                        }
                }
            }
        }
        pass = bad == 0;
        return std::to_string(checked) + " samples per scheme, " + std::to_string(bad) +
               " violations";
    });

    R.criterion(4, "teaching constructions and RT-dimension", [&](bool& pass) {
        std::uint64_t bad = 0;
        std::string first;
        auto note = [&](const std::string& what) {
            ++bad;
            if (first.empty()) first = what;
        };
        for (const auto& sc : R.suite) {
            const auto& cls = sc.cls;
            const std::size_t logc = static_cast<std::size_t>(
                std::ceil(std::log2(static_cast<double>(cls.size()))));
            auto hv = halving_teaching_concept(cls);
            if (hv.points.size() > logc) note(sc.name + ": halving too large");
            if (!is_teaching_set(cls, hv.concept_index, hv.points))
                note(sc.name + ": halving set invalid");
            auto pr = pair_reduction_teaching_concept(cls);
            if (!is_teaching_set(cls, pr.report.concept_index, pr.report.points))
                note(sc.name + ": pair-reduction set invalid");
            auto rt = rt_dimension(cls);
            if (rt.dimension > logc) note(sc.name + ": rt above log bound");
            if (cls.vc_dimension() == 1 && rt.dimension != 1)
                note(sc.name + ": VC-1 class with rt != 1");
            if (is_36_class(cls)) {
                auto l36 = three_six_teaching(cls);
                if (l36.points.size() > 3 ||
                    !is_teaching_set(cls, l36.concept_index, l36.points))
                    note(sc.name + ": (3,6) teaching set invalid");
            }
        }
        for (std::size_t n = 3; n <= 10; ++n)
            if (rt_dimension(gen::singletons_with_empty(n)).dimension != 1)
                note("singletons rt != 1 at n=" + std::to_string(n));
        const std::size_t ball_n[3] = {4, 4, 5};
        const std::size_t ball_d[3] = {1, 2, 2};
        for (int i = 0; i < 3; ++i)
            if (rt_dimension(gen::hamming_ball(ball_n[i], ball_d[i])).dimension != ball_d[i])
                note("hamming ball rt mismatch");
        pass = bad == 0;
        return bad == 0 ? "all teaching checks hold" : first;
    });

    R.criterion(5, "packing separation, maximality and size bounds", [&](bool& pass) {
        std::uint64_t bad = 0, checked = 0;
        std::string first;
        const std::pair<int, int> eps_list[3] = {{1, 8}, {1, 4}, {1, 2}};
        for (const auto& sc : R.suite) {
            const auto& cls = sc.cls;
            const unsigned vc = static_cast<unsigned>(cls.vc_dimension());
            for (auto [num, den] : eps_list) {
                auto eps = EpsilonSpec::from_ratio(num, den);
                Rat eps_rat(num, den);
                auto mu = Distribution::uniform(cls.domain_size());
                auto primal = greedy_packing(cls, mu, eps);
                ++checked;
                if (auto why = check_packing(cls, mu, eps, primal)) {
                    ++bad;
                    if (first.empty()) first = sc.name + " primal: " + *why;
                }
                auto hb = haussler_bound(vc, eps_rat);
                if (static_cast<double>(primal.members.size()) > hb.tight * (1 + 1e-9) ||
                    static_cast<double>(primal.members.size()) > hb.weak * (1 + 1e-9)) {
                    ++bad;
                    if (first.empty()) first = sc.name + " primal exceeds bound";
                }
                auto ap = dual_approx_set(cls, eps);
                auto mu_dual = Distribution::uniform(cls.size());
                ++checked;
                if (auto why = check_packing(ap.dual.cls, mu_dual, eps, ap.packing)) {
                    ++bad;
                    if (first.empty()) first = sc.name + " dual: " + *why;
                }
                const unsigned dd = std::min<unsigned>(63, 1u << (vc + 1));
                auto dhb = haussler_bound(dd, eps_rat);
                if (static_cast<double>(ap.points.size()) > dhb.tight * (1 + 1e-9)) {
                    ++bad;
                    if (first.empty()) first = sc.name + " dual exceeds bound";
                }
            }
        }
        pass = bad == 0;
        return bad == 0 ? std::to_string(checked) + " packings verified" : first;
    });

    R.criterion(6, "structural invariants", [&](bool& pass) {
        std::uint64_t bad = 0;
        std::string first;
        auto note = [&](const std::string& what) {
            ++bad;
            if (first.empty()) first = what;
        };
        for (const auto& sc : R.suite) {
            const auto& cls = sc.cls;
            const unsigned vc = static_cast<unsigned>(cls.vc_dimension());
            BigInt sb = sauer_bound(static_cast<unsigned>(cls.domain_size()), vc);
            if (BigInt(cls.size()) > sb) note(sc.name + ": above the Sauer-Shelah bound");
            if (sc.name.rfind("ball", 0) == 0 && BigInt(cls.size()) != sb)
                note(sc.name + ": ball misses Sauer-Shelah equality");
            if (vc <= 3) {
                const int dvc = cls.dual().cls.vc_dimension();
                if (dvc > (1 << (vc + 1))) note(sc.name + ": dual VC above 2^(d+1)");
            }
            if (cls.domain_size() <= 8) {
                for (std::size_t ci = 0; ci < cls.size(); ++ci) {
                    auto fast = min_teaching_set(cls, ci);
                    auto naive = naive_min_teaching_set(cls, ci);
                    if (!fast || *fast != naive)
                        note(sc.name + ": hitting-set search disagrees with enumeration");
                }
            }
        }
        pass = bad == 0;
        return bad == 0 ? "Sauer-Shelah, dual VC and exact-search agreement hold" : first;
    });

    R.criterion(7, "empirical generalization bounds", [&](bool& pass) {
        // (a) consistency failures vs the double-sampling bound.
        PacExperiment a(gen::intervals(20));
        BitVec mid(20);
        for (std::size_t p = 5; p <= 14; ++p) mid.set(p, true);
        a.target = a.cls.index_of(mid);
        a.mu = Distribution::uniform(20);
        a.eps = Rat(1, 4);
        a.trials = 2000;
        a.seed = 42;
        a.m = 1;
        while (ds_bound(a.m, 2, a.eps) >= 0.1) ++a.m;
        auto ra = simulate_consistency_failure(a);

        // (b) the compression learner vs the Littlestone-Warmuth bound.
        PacExperiment b(gen::singletons_with_empty(12));
        b.target = 1;  // a singleton
        b.eps = Rat(3, 10);
        b.trials = 2000;
        b.seed = 42;
        b.m = 40;
        auto rb = simulate_compression_learner(b);

        pass = ra.pass && rb.pass;
        std::ostringstream ss;
        ss << "consistency m=" << a.m << " rate=" << ra.rate << " bound=" << ra.bound
           << "; compression rate=" << rb.rate << " bound=" << rb.bound;
        return ss.str();
    });

    R.criterion(8, "byte-identical CLI outputs and serialization", [&](bool& pass) {
        if (R.opts.vclab_path.empty()) {
            pass = false;
            return std::string("no CLI binary path provided");
        }
        // Library-level serialization round-trip.
        auto cls = gen::intervals(6);
        Scheme eng(cls, SchemeParams{4});
        std::vector<std::size_t> pts{0, 1, 2, 3, 4, 5};
        auto cs = eng.compress(LabeledSample::from_concept(cls.row(7), pts));
        auto text = compressed_to_json(cs).dump();
        auto back = compressed_from_json(Json::parse(text));
        if (!(back == cs) || compressed_to_json(back).dump() != text) {
            pass = false;
            return std::string("serialization round-trip not bit-exact");
        }

        const fs::path dir =
            fs::temp_directory_path() /
            ("vclab_accept_" +
             std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
        fs::create_directories(dir);
        {
            std::ofstream f(dir / "intervals6.txt", std::ios::binary);
            f << to_class_text(gen::intervals(6));
            std::ofstream g(dir / "singletons6.txt", std::ios::binary);
            g << to_class_text(gen::singletons_with_empty(6));
        }
        const std::string bin = "\"" + R.opts.vclab_path + "\"";
        const std::string iv = (dir / "intervals6.txt").string();
        const std::string sg = (dir / "singletons6.txt").string();
        const std::vector<std::string> cmds = {
            " analyze -c " + iv + " --eps 1/4 --eps 1/2",
            " compress -c " + iv + " --target 3 --points 0-5 --base-threshold 4",
            " verify -c " + sg + " --base-threshold 4",
            " pac -c " + sg + " --target 1 --m 20 --eps 1/4 --trials 200 --seed 7",
        };
        pass = true;
        std::string detail = "4 commands run twice, all byte-identical";
        for (std::size_t i = 0; i < cmds.size() && pass; ++i) {
            const fs::path o1 = dir / ("out" + std::to_string(i) + "a");
            const fs::path o2 = dir / ("out" + std::to_string(i) + "b");
            const std::string c1 =
                bin + cmds[i] + " -o " + o1.string() + " 2>/dev/null";
            const std::string c2 =
                bin + cmds[i] + " -o " + o2.string() + " 2>/dev/null";
            if (std::system(c1.c_str()) != 0 || std::system(c2.c_str()) != 0) {
                pass = false;
                detail = "command failed: vclab" + cmds[i];
                break;
            }
            if (read_all(o1) != read_all(o2) || read_all(o1).empty()) {
                pass = false;
                detail = "outputs differ: vclab" + cmds[i];
            }
        }
        std::error_code ec;
        fs::remove_all(dir, ec);
        return detail;
    });

    return R.results;
}

bool all_pass(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return !results.empty();
}

}  // namespace acceptance
}  // namespace vclab
