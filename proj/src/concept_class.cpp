#include "vclab/concept_class.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace vclab {

ConceptClass ConceptClass::from_rows(std::size_t n, std::vector<BitVec> rows,
                                     bool* removed_duplicates) {
    if (n == 0) throw std::invalid_argument("domain must have at least one point");
    if (rows.empty()) throw std::invalid_argument("concept class must be nonempty");
    for (const auto& r : rows)
        if (r.size() != n)
            throw std::invalid_argument("all concepts must have the domain's length");
    std::sort(rows.begin(), rows.end());
    auto last = std::unique(rows.begin(), rows.end());
    if (removed_duplicates) *removed_duplicates = (last != rows.end());
    rows.erase(last, rows.end());
    return ConceptClass(n, std::move(rows));
}

ConceptClass ConceptClass::from_strings(const std::vector<std::string>& strs) {
    if (strs.empty()) throw std::invalid_argument("concept class must be nonempty");
    std::vector<BitVec> rows;
    rows.reserve(strs.size());
    for (const auto& s : strs) rows.push_back(BitVec::from_string(s));
    return from_rows(strs.front().size(), std::move(rows));
}

std::size_t ConceptClass::index_of(const BitVec& c) const {
    auto it = std::lower_bound(rows_.begin(), rows_.end(), c);
    if (it != rows_.end() && *it == c) return static_cast<std::size_t>(it - rows_.begin());
    return npos;
}

ConceptClass ConceptClass::restrict_to(std::span<const std::size_t> points) const {
    if (points.empty()) throw std::invalid_argument("restriction set must be nonempty");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i] >= n_) throw std::invalid_argument("restriction point outside domain");
        if (i > 0 && points[i] <= points[i - 1])
            throw std::invalid_argument("restriction points must be strictly ascending");
    }
    std::vector<BitVec> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) {
        BitVec p(points.size());
        for (std::size_t j = 0; j < points.size(); ++j)
            if (r.get(points[j])) p.set(j, true);
        out.push_back(std::move(p));
    }
    return from_rows(points.size(), std::move(out));
}

bool ConceptClass::shatters(std::span<const std::size_t> points) const {
    const std::size_t k = points.size();
    if (k == 0) return true;
    for (auto p : points)
        if (p >= n_) throw std::invalid_argument("point outside domain");
    if (k >= 64 || (std::uint64_t{1} << k) > rows_.size()) return false;
    const std::uint64_t need = std::uint64_t{1} << k;
    std::vector<std::uint64_t> seen((need + 63) / 64, 0);
    std::uint64_t distinct = 0;
    for (const auto& r : rows_) {
        std::uint64_t pat = 0;
        for (std::size_t j = 0; j < k; ++j)
            if (r.get(points[j])) pat |= std::uint64_t{1} << j;
        std::uint64_t bit = std::uint64_t{1} << (pat & 63);
        if (!(seen[pat >> 6] & bit)) {
            seen[pat >> 6] |= bit;
            if (++distinct == need) return true;
        }
    }
    return false;
}

int ConceptClass::vc_dimension() const {
    // Shattering is monotone, so scan sizes upward and stop at the first
    // size with no shattered subset.
    int dim = 0;
    for (std::size_t k = 1; k <= n_; ++k) {
        if (k >= 64 || (std::uint64_t{1} << k) > rows_.size()) break;
        bool found = for_each_subset(n_, k, [&](std::span<const std::size_t> s) {
            return shatters(s);
        });
        if (!found) break;
        dim = static_cast<int>(k);
    }
    return dim;
}

DualClass ConceptClass::dual() const {
    const std::size_t m = rows_.size();
    std::vector<std::pair<BitVec, std::size_t>> cols;
    cols.reserve(n_);
    for (std::size_t x = 0; x < n_; ++x) {
        BitVec col(m);
        for (std::size_t i = 0; i < m; ++i)
            if (rows_[i].get(x)) col.set(i, true);
        cols.emplace_back(std::move(col), x);
    }
    std::sort(cols.begin(), cols.end(), [](const auto& a, const auto& b) {
        int c = BitVec::lex_compare(a.first, b.first);
        return c != 0 ? c < 0 : a.second < b.second;
    });
    std::vector<std::size_t> col_of_point(n_, npos);
    std::vector<std::size_t> rep_point;
    std::vector<BitVec> drows;
    for (const auto& [col, x] : cols) {
        if (drows.empty() || !(drows.back() == col)) {
            drows.push_back(col);
            rep_point.push_back(x);
        }
        col_of_point[x] = drows.size() - 1;
    }
    return DualClass{ConceptClass(m, std::move(drows)), std::move(col_of_point),
                std::move(rep_point)};
}

std::string ConceptClass::content_key() const {
    std::string key = std::to_string(n_);
    key.push_back(':');
    for (const auto& r : rows_) {
        key += r.to_string();
        key.push_back(';');
    }
    return key;
}

LabeledSample LabeledSample::from_concept(const BitVec& c, std::span<const std::size_t> pts) {
    LabeledSample s;
    s.points.assign(pts.begin(), pts.end());
    std::sort(s.points.begin(), s.points.end());
    for (std::size_t i = 1; i < s.points.size(); ++i)
        if (s.points[i] == s.points[i - 1])
            throw std::invalid_argument("sample points must be distinct");
    s.labels.reserve(s.points.size());
    for (auto p : s.points) {
        if (p >= c.size()) throw std::invalid_argument("sample point outside domain");
        s.labels.push_back(c.get(p) ? 1 : 0);
    }
    return s;
}

LabeledSample LabeledSample::make(std::vector<std::pair<std::size_t, std::uint8_t>> items) {
    std::sort(items.begin(), items.end());
    LabeledSample s;
    s.points.reserve(items.size());
    s.labels.reserve(items.size());
    for (const auto& [p, l] : items) {
        if (!s.points.empty() && s.points.back() == p)
            throw std::invalid_argument("sample points must be distinct");
        if (l > 1) throw std::invalid_argument("labels must be 0 or 1");
        s.points.push_back(p);
        s.labels.push_back(l);
    }
    return s;
}

std::optional<std::uint8_t> LabeledSample::label_of(std::size_t point) const {
    auto it = std::lower_bound(points.begin(), points.end(), point);
    if (it != points.end() && *it == point)
        return labels[static_cast<std::size_t>(it - points.begin())];
    return std::nullopt;
}

namespace {

LoadResult load_class_json(std::string_view text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object() || !j.contains("concepts") || !j["concepts"].is_array())
        throw std::invalid_argument("class JSON must be {\"n\": int, \"concepts\": [...]}");
    std::vector<std::string> strs;
    for (const auto& e : j["concepts"]) {
        if (!e.is_string()) throw std::invalid_argument("class JSON concepts must be strings");
        strs.push_back(e.get<std::string>());
    }
    if (strs.empty()) throw std::invalid_argument("class has no concepts");
    std::size_t n = strs.front().size();
    if (j.contains("n")) {
        if (!j["n"].is_number_unsigned() || j["n"].get<std::size_t>() == 0)
            throw std::invalid_argument("class JSON field n must be a positive integer");
        n = j["n"].get<std::size_t>();
    }
    std::vector<BitVec> rows;
    for (const auto& s : strs) {
        if (s.size() != n) throw std::invalid_argument("ragged row in class JSON");
        rows.push_back(BitVec::from_string(s));
    }
    bool dups = false;
    auto cls = ConceptClass::from_rows(n, std::move(rows), &dups);
    return LoadResult{std::move(cls), dups, strs.size()};
}

}  // namespace

LoadResult load_class(std::string_view text) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) throw std::invalid_argument("empty class file");
    if (text[first] == '{') {
        try {
            return load_class_json(text);
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument(std::string("bad class JSON: ") + e.what());
        }
    }
    std::vector<BitVec> rows;
    std::size_t n = 0, count = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        if (rows.empty()) {
            n = line.size();
        } else if (line.size() != n) {
            throw std::invalid_argument("ragged row in class file");
        }
        rows.push_back(BitVec::from_string(line));
        ++count;
    }
    if (rows.empty()) throw std::invalid_argument("class file has no concepts");
    bool dups = false;
    auto cls = ConceptClass::from_rows(n, std::move(rows), &dups);
    return LoadResult{std::move(cls), dups, count};
}

std::string to_class_text(const ConceptClass& cls) {
    std::string out;
    for (const auto& r : cls.rows()) {
        out += r.to_string();
        out.push_back('\n');
    }
    return out;
}

BigInt sauer_bound(unsigned n, unsigned d) {
    if (d > n) throw std::invalid_argument("sauer_bound requires 0 <= d <= n");
    BigInt sum = 0, term = 1;  // term = C(n, k)
    for (unsigned k = 0; k <= d; ++k) {
        sum += term;
        term = term * (n - k) / (k + 1);
    }
    return sum;
}

}  // namespace vclab
