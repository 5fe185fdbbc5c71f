#pragma once

// JSON file formats: tensors in and reports out. Full symmetric matrices
// are stored (not packed triangles) and re-validated on load; save(load(f))
// is byte-identical for canonical files.

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pipeline.hpp"

namespace cayley {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

namespace detail {

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) {
            const Fq& v = m(i, j);
            if (v.field().e == 1) {
                row.push_back(v.coeff(0));
            } else {
                Json coeffs = Json::array();
                for (int k = 0; k < v.field().e; ++k) coeffs.push_back(v.coeff(k));
                row.push_back(coeffs);
            }
        }
        rows.push_back(row);
    }
    return rows;
}

inline Json vec_to_json(const Vec& v) {
    Json out = Json::array();
    for (const auto& c : v) {
        if (c.field().e == 1) {
            out.push_back(c.coeff(0));
        } else {
            Json coeffs = Json::array();
            for (int k = 0; k < c.field().e; ++k) coeffs.push_back(c.coeff(k));
            out.push_back(coeffs);
        }
    }
    return out;
}

inline Fq fq_from_json(const Json& j, const Field& f) {
    if (j.is_number_integer()) return f.from_int(j.get<int64_t>());
    std::vector<uint32_t> coeffs;
    for (const auto& c : j) coeffs.push_back(uint32_t(c.get<int64_t>() % int64_t(f.p)));
    return f.element(coeffs);
}

// FNV-1a of the canonical serialization; enough to tie reports to inputs
inline std::string digest(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[19];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace detail

inline Json tensor_to_json(const BlockTensor& A) {
    const Field& f = A.field();
    Json j;
    j["p"] = f.p;
    j["e"] = f.e;
    j["modulus"] = f.modulus;
    j["n"] = A.n();
    Json blocks = Json::array();
    for (int l = 0; l < A.r(); ++l) {
        Json b;
        b["d"] = A.block(l).d;
        Json slices = Json::array();
        for (const auto& s : A.block(l).slices) slices.push_back(detail::matrix_to_json(s));
        b["slices"] = slices;
        blocks.push_back(b);
    }
    j["blocks"] = blocks;
    return j;
}

inline BlockTensor tensor_from_json(const Json& j) {
    uint64_t p = j.at("p").get<uint64_t>();
    int e = j.value("e", 1);
    const Field* f = nullptr;
    if (j.contains("modulus") && e > 1) {
        std::vector<uint32_t> mod;
        for (const auto& c : j.at("modulus")) mod.push_back(c.get<uint32_t>());
        f = &Field::with_modulus(p, mod);
    } else {
        f = &GF(p, e);
    }
    int n = j.at("n").get<int>();
    std::vector<Block> blocks;
    for (const auto& bj : j.at("blocks")) {
        Block b;
        b.d = bj.at("d").get<int>();
        for (const auto& sj : bj.at("slices")) {
            Matrix m(*f, b.d, b.d);
            int i = 0;
            for (const auto& row : sj) {
                int c = 0;
                for (const auto& cell : row) m(i, c++) = detail::fq_from_json(cell, *f);
                ++i;
            }
            if (!m.is_symmetric()) throw std::invalid_argument("slice is not symmetric");
            b.slices.push_back(std::move(m));
        }
        blocks.push_back(std::move(b));
    }
    return BlockTensor(*f, n, std::move(blocks));
}

inline std::string tensor_to_string(const BlockTensor& A) { return tensor_to_json(A).dump(2) + "\n"; }

inline BlockTensor tensor_from_string(const std::string& text) {
    return tensor_from_json(Json::parse(text));
}

inline void save_tensor(const BlockTensor& A, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << tensor_to_string(A);
}

inline BlockTensor load_tensor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return tensor_from_string(ss.str());
}

inline Json point_to_json(const ProjPoint& pt) {
    Json j;
    j["degree"] = pt.field().e;
    j["coords"] = detail::vec_to_json(pt.coords);
    return j;
}

inline Json variety_to_json(const CayleyVariety& cv) {
    Json j;
    j["count"] = cv.points.size();
    j["bezout_bound"] = cv.bezout_bound;
    j["complete"] = cv.complete;
    j["geometrically_complete"] = cv.geometrically_complete;
    j["all_reduced"] = cv.all_reduced;
    j["swept_degree"] = cv.swept_degree;
    Json pts = Json::array();
    for (size_t k = 0; k < cv.points.size(); ++k) {
        Json pj = point_to_json(cv.points[k]);
        pj["reduced"] = bool(cv.reduced[k]);
        pts.push_back(pj);
    }
    j["points"] = pts;
    Json orbits = Json::array();
    for (const auto& o : cv.orbits) {
        Json oj;
        oj["degree"] = o.degree;
        oj["points"] = o.point_indices;
        orbits.push_back(oj);
    }
    j["orbits"] = orbits;
    return j;
}

inline const char* classification_name(TangentClass c) {
    switch (c) {
        case TangentClass::OddTheta: return "odd";
        case TangentClass::Theta0: return "theta0";
        case TangentClass::Unknown: return "unknown";
    }
    return "?";
}

inline Json report_to_json(const PipelineResult& res, const std::string& input_digest) {
    Json j;
    j["version"] = kToolVersion;
    j["input_digest"] = input_digest;
    j["shape"] = shape_name(res.shape);
    j["cayley"] = variety_to_json(res.variety);
    Json sec;
    sec["count"] = res.secant_count;
    sec["orbit_classes"] = res.orbit_count;
    Json census;
    census["odd"] = res.census.odd_count;
    Json theta0 = Json::object();
    for (const auto& [block, count] : res.census.theta0_per_block)
        theta0[std::to_string(block)] = count;
    census["theta0"] = theta0;
    census["unknown"] = res.census.unknown_count;
    sec["orbit_census"] = census;
    j["secants"] = sec;
    Json planes = Json::array();
    for (size_t k = 0; k < res.census.planes.size(); ++k) {
        Json pj;
        pj["covector"] = detail::vec_to_json(res.census.planes[k].covector);
        pj["classification"] = classification_name(res.census.classifications[k]);
        if (res.census.classifications[k] == TangentClass::Theta0)
            pj["theta0_block"] = res.census.theta0_blocks[k];
        planes.push_back(pj);
    }
    j["hyperplanes"] = planes;
    Json reports = Json::array();
    for (const auto& tr : res.reports) {
        Json rj;
        rj["secant"] = {tr.secant.i, tr.secant.j};
        if (tr.hyperplane) rj["covector"] = detail::vec_to_json(tr.hyperplane->covector);
        rj["classification"] = classification_name(tr.classification);
        rj["contact_certified"] = tr.contact_certified;
        Json cps = Json::array();
        for (const auto& cp : tr.contact_points) {
            Json cj = point_to_json(cp.x);
            cj["tangent"] = cp.tangent;
            cj["kernel_meets_secant"] = cp.kernel_meets_secant;
            cj["on_secant_incidence"] = cp.from_line_route;
            cps.push_back(cj);
        }
        rj["contact_points"] = cps;
        reports.push_back(rj);
    }
    j["tangent_reports"] = reports;
    Json checks = Json::array();
    for (const auto& c : res.checks) {
        Json cj;
        cj["claim"] = c.claim;
        cj["statement"] = c.statement;
        cj["pass"] = c.pass;
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    return j;
}

}  // namespace cayley
