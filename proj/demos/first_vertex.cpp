// Predicted first vertex vs the computed Newton polygon for a few curves y^p - y = f(x).
#include <asnp/serialize.hpp>

#include <iostream>

int main() {
    using namespace asnp;
    struct Item {
        u64 p;
        unsigned m;
        const char* coeffs;
    };
    const Item items[] = {
        {3, 1, "2:1"},          // elliptic, supersingular
        {3, 1, "8:1,1:1"},      // d = p^2 - 1
        {3, 1, "7:1,5:1"},      // d = p^2 - 2, Hasse c_7^3 c_5
        {3, 1, "7:1"},          // same degree, Hasse vanishes
        {5, 1, "3:1,2:1"},      // d = p - 2
        {3, 2, "5:[0,1],2:1"},  // over F_9
    };
    for (const auto& it : items) {
        auto f = parse_coeffs(make_field(it.p, it.m), it.coeffs);
        auto r = verify_first_vertex(f);
        std::cout << "p=" << it.p << " m=" << it.m << " f=" << it.coeffs << "  case=" << r.case_tag
                  << "  hasse=" << element_string(r.hasse) << "  predicted=(" << r.pred_x << "," << r.pred_y << ")"
                  << "  actual=";
        if (r.actual)
            std::cout << "(" << r.actual->x << "," << rational_string(r.actual->y) << ")";
        else
            std::cout << "none";
        std::cout << "  NP(C_f)=" << to_json(r.np_curve).dump() << "\n";
    }
}
