#include "vclab/serialize.hpp"

#include <stdexcept>

namespace vclab {

namespace mp = boost::multiprecision;

Json compressed_to_json(const CompressedSample& cs) {
    Json z = Json::array();
    for (std::size_t i = 0; i < cs.kept.size(); ++i)
        z.push_back({cs.kept.points[i], cs.kept.labels[i]});
    Json f = Json::array();
    for (const auto& [t, v] : cs.info.marks) f.push_back({t, v});
    return Json{{"T", cs.info.depth}, {"Z", z}, {"f", f}};
}

CompressedSample compressed_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("T") || !j.contains("Z") || !j.contains("f"))
        throw std::invalid_argument("compressed sample needs keys T, Z, f");
    CompressedSample cs;
    cs.info.depth = j.at("T").get<unsigned>();
    std::vector<std::pair<std::size_t, std::uint8_t>> items;
    for (const auto& e : j.at("Z")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("Z entries must be [point,label]");
        items.emplace_back(e[0].get<std::size_t>(), e[1].get<std::uint8_t>());
    }
    cs.kept = LabeledSample::make(std::move(items));
    for (const auto& e : j.at("f")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("f entries must be [level,point]");
        cs.info.marks.emplace_back(e[0].get<unsigned>(), e[1].get<std::size_t>());
    }
    validate_side_info(cs);
    return cs;
}

Json labeled_sample_to_json(const LabeledSample& s) {
    Json a = Json::array();
    for (std::size_t i = 0; i < s.size(); ++i) a.push_back({s.points[i], s.labels[i]});
    return a;
}

Json teaching_report_to_json(const TeachingReport& r, bool valid) {
    Json pts = Json::array();
    for (std::size_t i = 0; i < r.points.size(); ++i)
        pts.push_back({r.points[i], r.labels[i]});
    return Json{{"concept", r.bits.to_string()},
                {"concept_index", r.concept_index},
                {"method", r.method},
                {"sample", pts},
                {"size", r.points.size()},
                {"valid", valid}};
}

Json rt_to_json(const ConceptClass& cls, const RTDecomposition& rt) {
    Json layers = Json::array();
    for (const auto& layer : rt.layers) {
        Json members = Json::array();
        for (const auto& [idx, set] : layer.members)
            members.push_back(Json{{"concept", cls.row(idx).to_string()},
                                   {"concept_index", idx},
                                   {"teaching_set", set}});
        layers.push_back(Json{{"min_size", layer.set_size}, {"members", members}});
    }
    return Json{{"layers", layers}, {"rt_dimension", rt.dimension}};
}

Json size_report_to_json(const SizeReport& r) {
    return Json{{"cases", r.cases},
                {"depth", r.depth},
                {"kept", r.kept},
                {"levels", r.levels},
                {"side_info_bits", r.side_info_bits}};
}

Json verify_report_to_json(const VerifyReport& r) {
    return Json{{"base_levels", r.base_levels},
                {"case1_levels", r.case1_levels},
                {"case2_levels", r.case2_levels},
                {"collision_checked", r.collision_checked},
                {"collision_groups", r.collision_groups},
                {"collision_violations", r.collision_violations},
                {"exhaustive", r.exhaustive},
                {"failure_samples", r.failure_samples},
                {"failures", r.failures},
                {"level_invariant_violations", r.level_invariant_violations},
                {"malformed_rejected", r.malformed_rejected},
                {"max_depth", r.max_depth},
                {"max_kept", r.max_kept},
                {"ok", r.ok()},
                {"pairs", r.pairs},
                {"shrink_violations", r.shrink_violations}};
}

Rat parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt num(text.substr(0, slash));
            BigInt den(text.substr(slash + 1));
            if (den == 0) throw std::invalid_argument("zero denominator");
            return Rat(num, den);
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return Rat(BigInt(text), 1);
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        BigInt den = 1;
        for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
        return Rat(BigInt(digits), den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational: " + text);
    }
}

std::string rational_to_string(const Rat& r) {
    return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

std::vector<std::size_t> parse_points(const std::string& text) {
    std::vector<std::size_t> pts;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        pos = comma == std::string::npos ? text.size() : comma + 1;
        if (tok.empty()) continue;
        auto dash = tok.find('-');
        try {
            if (dash == std::string::npos) {
                pts.push_back(std::stoull(tok));
            } else {
                std::size_t a = std::stoull(tok.substr(0, dash));
                std::size_t b = std::stoull(tok.substr(dash + 1));
                if (b < a) throw std::invalid_argument("descending range");
                for (std::size_t p = a; p <= b; ++p) pts.push_back(p);
            }
        } catch (const std::exception&) {
            throw std::invalid_argument("bad point list: " + text);
        }
    }
    if (pts.empty()) throw std::invalid_argument("empty point list");
    return pts;
}

Distribution distribution_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("weights") || !j["weights"].is_array())
        throw std::invalid_argument("distribution JSON must be {\"weights\": [...]}");
    std::vector<std::uint64_t> w;
    for (const auto& e : j["weights"]) {
        if (!e.is_number_unsigned())
            throw std::invalid_argument("weights must be nonnegative integers");
        w.push_back(e.get<std::uint64_t>());
    }
    return Distribution::from_weights(std::move(w));
}

}  // namespace vclab
