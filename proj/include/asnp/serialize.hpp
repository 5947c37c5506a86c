#pragma once

#include <asnp/hasse.hpp>
#include <asnp/lfun.hpp>
#include <asnp/modeq.hpp>

#include <json.hpp>

#include <cctype>
#include <sstream>
#include <string>

namespace asnp {

using json = nlohmann::json;

inline json to_json(const FieldElement& x) {
    json a = json::array();
    for (auto v : x.coords()) a.push_back(v);
    return a;
}

// Integers that fit in 64 bits are numbers, larger ones decimal strings.
inline json to_json(const BigInt& v) {
    if (v >= BigInt(INT64_MIN) && v <= BigInt(INT64_MAX)) return static_cast<long long>(v);
    return v.str();
}

inline json to_json(const CycInt& x) {
    json c = json::array();
    for (auto& v : x.coords()) c.push_back(to_json(v));
    return {{"p", x.p()}, {"coords", c}};
}

inline json to_json(const Solution& s) {
    json u = json::object();
    for (auto& [d, v] : s.u) u[std::to_string(d)] = v;
    return {{"p", s.p}, {"l", s.l}, {"u", u}};
}

inline json to_json(const NewtonPolygon& np) {
    json a = json::array();
    for (auto& v : np.vertices) a.push_back({v.x, rational_string(v.y)});
    return a;
}

inline json to_json(const SupportMap& s) {
    json jumps = json::array();
    for (auto& [i, j] : s.jumps) jumps.push_back({i, j});
    return {{"l", s.l}, {"values", s.values}, {"jumps", jumps}, {"irreducible", s.irreducible}};
}

inline std::string element_string(const FieldElement& x) {
    if (x.ctx()->m == 1) return std::to_string(x.coords()[0]);
    std::string s = "[";
    for (std::size_t j = 0; j < x.coords().size(); ++j) s += (j ? "," : "") + std::to_string(x.coords()[j]);
    return s + "]";
}

// "i:elem,i:elem" with elem either an integer or [a0,...,a_{m-1}]
inline std::string coeffs_string(const ASPolynomial& f) {
    std::string s;
    for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
        if (!s.empty()) s += ",";
        s += std::to_string(it->first) + ":" + element_string(it->second);
    }
    return s;
}

inline ASPolynomial parse_coeffs(const FieldPtr& F, const std::string& text) {
    ASPolynomial f(F);
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto number = [&]() -> long long {
        skip();
        std::size_t start = pos;
        if (pos < text.size() && text[pos] == '-') ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw DomainError("malformed coefficient list: expected a number at position " + std::to_string(start));
        return std::stoll(text.substr(start, pos - start));
    };
    skip();
    while (pos < text.size()) {
        const long long i = number();
        skip();
        if (pos >= text.size() || text[pos] != ':') throw DomainError("malformed coefficient list: expected ':'");
        ++pos;
        skip();
        std::vector<std::uint32_t> coords;
        auto residue = [&](long long a) {
            const long long p = static_cast<long long>(F->p);
            return static_cast<std::uint32_t>(((a % p) + p) % p);
        };
        if (pos < text.size() && text[pos] == '[') {
            ++pos;
            for (;;) {
                coords.push_back(residue(number()));
                skip();
                if (pos < text.size() && text[pos] == ',') {
                    ++pos;
                    continue;
                }
                if (pos < text.size() && text[pos] == ']') {
                    ++pos;
                    break;
                }
                throw DomainError("malformed field element");
            }
        } else {
            coords.push_back(residue(number()));
        }
        if (i <= 0) throw DomainError("exponents must be >= 1");
        if (coords.size() > F->m) throw DomainError("field element has more than m coordinates");
        FieldElement c(F, coords);
        f.set(static_cast<unsigned>(i), f.coeff(static_cast<unsigned>(i)) + c);
        skip();
        if (pos < text.size() && text[pos] == ',') ++pos;
        skip();
    }
    if (f.is_zero()) throw DomainError("polynomial is zero");
    return f;
}

inline json to_json(const VertexReport& r) {
    json actual = nullptr;
    if (r.actual) actual = json::array({r.actual->x, rational_string(r.actual->y)});
    return {{"p", r.p},
            {"m", r.m},
            {"d", r.d},
            {"case", r.case_tag},
            {"hasse_value", to_json(r.hasse)},
            {"hasse_nonzero", r.hasse_nonzero},
            {"dim_ss", r.dim_ss},
            {"predicted", {r.pred_x, r.pred_y}},
            {"actual", actual},
            {"agrees", r.agrees},
            {"above", r.above},
            {"np_curve", to_json(r.np_curve)}};
}

} // namespace asnp
