#include <asnp/scan.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace asnp;

namespace {

struct Flags {
    u64 p = 3;
    u64 d = 0;
    unsigned m = 1;
    unsigned l = 0;
    unsigned w = 0;
    unsigned lmax = 0;
    unsigned workers = 1;
    u64 budget = kDefaultBudget;
    std::string coeffs;
    std::string out;
    std::string u;
    std::string support;
    bool brute = false;
    bool compare = false;
};

void emit(const json& j) { std::cout << j.dump() << "\n"; }

void need_prime(u64 p) {
    if (p < 3 || !is_prime(p)) throw DomainError("--p must be an odd prime");
}

void need_degree(u64 p, u64 d) {
    if (d == 0) throw DomainError("--d must be >= 1");
    if (d % p == 0) throw DomainError("gcd(d, p) != 1; Artin-Schreier reduce first (c x^{pj} -> c^{1/p} x^j)");
}

std::vector<u64> parse_list(const std::string& s) {
    std::vector<u64> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.find_first_not_of(" ") == std::string::npos) continue;
        try {
            out.push_back(std::stoull(tok));
        } catch (const std::exception&) {
            throw DomainError("not an integer: '" + tok + "'");
        }
    }
    return out;
}

// "d:u,d:u"
std::map<u64, u64> parse_u(const std::string& s) {
    std::map<u64, u64> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto c = tok.find(':');
        if (c == std::string::npos) throw DomainError("expected d:u pairs, got '" + tok + "'");
        try {
            out[std::stoull(tok.substr(0, c))] = std::stoull(tok.substr(c + 1));
        } catch (const std::exception&) {
            throw DomainError("malformed pair '" + tok + "'");
        }
    }
    return out;
}

ASPolynomial read_poly(const Flags& F) {
    need_prime(F.p);
    if (F.coeffs.empty()) throw DomainError("--coeffs is required");
    return parse_coeffs(make_field(F.p, F.m), F.coeffs);
}

json matrix_json(const Mat& A) {
    json rows = json::array();
    for (auto& r : A) {
        json row = json::array();
        for (auto& x : r) row.push_back(to_json(x));
        rows.push_back(row);
    }
    return rows;
}

void cmd_density(const Flags& F) {
    need_prime(F.p);
    need_degree(F.p, F.d);
    json j{{"p", F.p}, {"d", F.d}};
    try {
        j["closed"] = rational_string(density_closed_form(F.p, F.d));
    } catch (const DomainError&) {
        if (!F.brute) throw;
        j["closed"] = nullptr;
    }
    if (F.brute) {
        const unsigned lmax = F.lmax ? F.lmax : default_window(F.p, F.d);
        auto b = density_bruteforce(ExponentSet::interval(F.p, F.d), lmax);
        j["brute"] = rational_string(b.density);
        j["l"] = b.l;
        j["lmax"] = lmax;
    }
    emit(j);
}

void cmd_sigma(const Flags& F) {
    need_prime(F.p);
    need_degree(F.p, F.d);
    if (F.l == 0) throw DomainError("--l must be >= 1");
    emit({{"p", F.p}, {"d", F.d}, {"l", F.l}, {"sigma", sigma_min_weight(ExponentSet::interval(F.p, F.d), F.l)}});
}

void cmd_solutions(const Flags& F) {
    need_prime(F.p);
    need_degree(F.p, F.d);
    const auto E = ExponentSet::interval(F.p, F.d);
    if (!F.brute && !F.compare) {
        json a = json::array();
        for (auto& s : enumerate_minimal_closed(F.p, F.d)) a.push_back(to_json(s));
        emit(a);
        return;
    }
    if (F.l == 0 || F.w == 0) throw DomainError("--l and --w are required for brute-force enumeration");
    auto brute = canonical_classes(enumerate_minimal_brute(E, F.l, F.w));
    if (F.brute && !F.compare) {
        json a = json::array();
        for (auto& s : brute) a.push_back(to_json(s));
        emit(a);
        return;
    }
    std::set<Solution> closed;
    for (auto& s : enumerate_minimal_closed(F.p, F.d))
        if (s.l == F.l && s.weight() == F.w) closed.insert(s);
    std::set<Solution> all = brute;
    all.insert(closed.begin(), closed.end());
    std::cout << "p,d,class_id,length,weight,match\n";
    std::size_t id = 0;
    for (auto& s : all)
        std::cout << F.p << "," << F.d << "," << id++ << "," << s.l << "," << s.weight() << ","
                  << (brute.count(s) && closed.count(s) ? 1 : 0) << "\n";
}

void cmd_support(const Flags& F) {
    need_prime(F.p);
    if (F.l == 0) throw DomainError("--l must be >= 1");
    Solution U;
    U.p = F.p;
    U.l = F.l;
    U.u = parse_u(F.u);
    if (U.u.empty()) throw DomainError("--u is required");
    const u64 d = F.d ? F.d : U.u.rbegin()->first;
    need_degree(F.p, d);
    const auto E = ExponentSet::interval(F.p, d);
    json j = to_json(support_map(E, U));
    j["weight"] = U.weight();
    j["density"] = rational_string(U.density());
    emit(j);
}

json lpoly_json(const ASPolynomial& f, const LPolynomial& L) {
    const auto npf = np_of_l(L);
    const auto npc = np_of_curve(npf, f.p());
    json b = json::array();
    for (auto& c : L.b) b.push_back(to_json(c));
    json j{{"p", f.p()}, {"m", f.m()}, {"coeffs", coeffs_string(f)}, {"L", b}, {"np_f", to_json(npf)}, {"np_curve", to_json(npc)}};
    if (f.degree() > 1) {
        j["genus"] = genus(f.p(), f.degree());
        j["supersingular"] = is_supersingular(npc);
    } else {
        j["genus"] = 0;
        j["supersingular"] = nullptr;
    }
    return j;
}

void cmd_lpoly(const Flags& F) {
    const auto f = as_reduce(read_poly(F));
    emit(lpoly_json(f, l_polynomial(f, F.budget)));
}

void cmd_np(const Flags& F) {
    const auto f = as_reduce(read_poly(F));
    const auto npf = np_of_l(l_polynomial(f, F.budget));
    const auto npc = np_of_curve(npf, f.p());
    json j{{"p", f.p()}, {"m", f.m()}, {"coeffs", coeffs_string(f)}, {"np_f", to_json(npf)}, {"np_curve", to_json(npc)}};
    auto s = npf.first_slope();
    j["first_slope"] = s ? json(rational_string(*s)) : json(nullptr);
    emit(j);
}

void cmd_vertex(const Flags& F) {
    if (F.coeffs.empty()) {
        need_prime(F.p);
        need_degree(F.p, F.d);
        if (F.d < 2) throw DomainError("--d must be >= 2");
        auto v = predicted_first_vertex(F.p, F.d);
        emit({{"p", F.p},
              {"d", F.d},
              {"case", case_name(v.range.tag)},
              {"predicted", {v.x, v.y}},
              {"slope", rational_string(Rational(v.y, v.x))},
              {"support", v.support}});
        return;
    }
    emit(to_json(verify_first_vertex(read_poly(F), F.budget)));
}

void cmd_hasse(const Flags& F) {
    const auto f = as_reduce(read_poly(F));
    if (f.degree() < 2) throw DomainError("degree must be >= 2 after reduction");
    const auto M = mbar_matrix(f);
    const auto cp = charpoly_first_slope(M);
    const auto h = hasse_value(f);
    emit({{"p", f.p()},
          {"m", f.m()},
          {"d", f.degree()},
          {"case", case_name(classify_degree(f.p(), f.degree()).tag)},
          {"hasse_value", to_json(h)},
          {"nonzero", !h.is_zero()},
          {"labels", M.labels},
          {"matrix", matrix_json(M.A)},
          {"dim_ss", cp.dim_ss},
          {"charpoly", cp.coeffs}});
}

void cmd_scan(const Flags& F) {
    need_prime(F.p);
    check_sweep_budget(F.p, F.d, F.m, F.budget);
    std::unique_ptr<std::ofstream> file;
    std::string tmp;
    if (!F.out.empty()) {
        tmp = F.out + ".partial";
        file = std::make_unique<std::ofstream>(tmp);
        if (!*file) throw DomainError("cannot write " + F.out);
    }
    SupersingularSummary s;
    try {
        s = scan_supersingular(F.p, F.d, F.m, file.get(), F.workers, F.budget);
    } catch (...) {
        if (file) {
            file.reset();
            std::filesystem::remove(tmp);
        }
        throw;
    }
    if (file) {
        file.reset();
        std::filesystem::rename(tmp, F.out);
    }
    std::cerr << s.rows << " curves, " << s.supersingular << " supersingular\n";
    emit({{"p", F.p},
          {"d", F.d},
          {"m", F.m},
          {"rows", s.rows},
          {"supersingular", s.supersingular},
          {"first_slopes", s.first_slopes},
          {"first_vertices", s.first_vertices}});
}

void cmd_tightness(const Flags& F) {
    need_prime(F.p);
    auto supp = parse_list(F.support);
    if (supp.empty()) throw DomainError("--support must list at least one exponent");
    const u64 top = *std::max_element(supp.begin(), supp.end());
    if (F.d && F.d != top) throw DomainError("--d must equal the largest support exponent");
    auto r = tightness_search(F.p, F.m, supp, F.budget);
    json j{{"p", F.p}, {"d", top}, {"m", F.m}, {"target", rational_string(r.target)}, {"found", r.found}, {"tried", r.tried}};
    if (r.found) {
        j["witness"] = coeffs_string(r.witness);
        j["value"] = rational_string(*r.value);
    }
    emit(j);
}

int cmd_selftest() {
    json checks = json::array();
    bool ok = true;
    auto check = [&](const std::string& name, bool pass) {
        checks.push_back({{"name", name}, {"pass", pass}});
        ok = ok && pass;
    };
    check("density(3,7)=1/3", density_closed_form(3, 7) == Rational(1, 3));
    check("sigma(3,{1..7},3)=2", sigma_min_weight(ExponentSet::interval(3, 7), 3) == 2);
    auto F3 = make_field(3, 1);
    auto L = l_polynomial(parse_coeffs(F3, "2:1"));
    check("L(x^2)=1+(1+2z)T", L.b.size() == 2 && L.b[1] == CycInt(3, {1, 2}));
    auto rep = verify_first_vertex(parse_coeffs(F3, "8:1,1:1"));
    check("first vertex of x^8+x is (4,1)", rep.agrees && rep.pred_x == 4 && rep.pred_y == 1);
    emit({{"ok", ok}, {"checks", checks}});
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Artin-Schreier curves: densities, L-polynomials, Newton polygons, first vertices"};
    app.require_subcommand(1);
    Flags F;
    auto common = [&](CLI::App* s) {
        s->add_option("--p", F.p, "odd prime");
        s->add_option("--d", F.d, "degree");
        s->add_option("--m", F.m, "base field degree");
        s->add_option("--coeffs", F.coeffs, "coefficients as i:elem pairs, elem an integer or [a0,...]");
        s->add_option("--out", F.out, "output file");
        s->add_option("--budget", F.budget, "enumeration budget in field points");
        s->add_option("--lmax", F.lmax, "largest length for brute-force density");
        s->add_option("--workers", F.workers, "worker threads");
    };
    auto density = app.add_subcommand("density", "closed-form and brute-force p-density");
    common(density);
    density->add_flag("--brute", F.brute, "also run the brute-force search up to --lmax");
    auto sigma = app.add_subcommand("sigma", "minimal weight of length-l solutions");
    common(sigma);
    sigma->add_option("--l", F.l, "solution length");
    auto solutions = app.add_subcommand("solutions", "minimal irreducible solutions");
    common(solutions);
    solutions->add_flag("--brute", F.brute, "brute-force classes at --l, --w");
    solutions->add_flag("--compare", F.compare, "CSV comparison of closed and brute classes");
    solutions->add_option("--l", F.l, "solution length");
    solutions->add_option("--w", F.w, "weight");
    auto support = app.add_subcommand("support", "support map of a solution");
    common(support);
    support->add_option("--u", F.u, "d:u pairs");
    support->add_option("--l", F.l, "solution length");
    auto lpoly = app.add_subcommand("lpoly", "L-polynomial and Newton polygons");
    common(lpoly);
    auto np = app.add_subcommand("np", "Newton polygons");
    common(np);
    auto vertex = app.add_subcommand("vertex", "predicted first vertex, checked against the L-polynomial when --coeffs is given");
    common(vertex);
    auto hasse = app.add_subcommand("hasse", "mod-p matrix, Hasse value and first-slope characteristic polynomial");
    common(hasse);
    auto scan = app.add_subcommand("scan-supersingular", "full coefficient sweep with CSV output");
    common(scan);
    auto tight = app.add_subcommand("tightness", "search for f attaining the density on a given support");
    common(tight);
    tight->add_option("--support", F.support, "comma-separated exponents");
    auto selftest = app.add_subcommand("selftest", "quick consistency checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*density) cmd_density(F);
        else if (*sigma) cmd_sigma(F);
        else if (*solutions) cmd_solutions(F);
        else if (*support) cmd_support(F);
        else if (*lpoly) cmd_lpoly(F);
        else if (*np) cmd_np(F);
        else if (*vertex) cmd_vertex(F);
        else if (*hasse) cmd_hasse(F);
        else if (*scan) cmd_scan(F);
        else if (*tight) cmd_tightness(F);
        else if (*selftest) return cmd_selftest();
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
