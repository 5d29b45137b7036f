// Builds the classical Scherk surface z = ln(cos u / cos v) as the non-metric
// Type I family, checks that it is minimal on a few points and writes an OBJ
// quad mesh of its admissible square.
//
//   scherk_demo [out.obj] [n]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "transmin/transmin.hpp"

int main(int argc, char** argv) {
    using namespace transmin;
    const std::string path = argc > 1 ? argv[1] : "scherk.obj";
    const int n = argc > 2 ? std::stoi(argv[2]) : 48;

    const BuiltFamily scherk = build(make_family(FamilyId::F2_51, {{"c", 1.0}}));
    std::cout << "domain u " << to_string(scherk.domain.u) << ", v " << to_string(scherk.domain.v) << "\n";

    for (double u : {-0.9, 0.0, 0.7}) {
        for (double v : {-0.4, 1.1}) {
            const CurvatureReport r = mean_curvature(scherk.surface, u, v);
            const CurvatureReport lc = mean_curvature(scherk.surface, ConnectionKind::LeviCivita, u, v);
            std::printf("(%5.2f, %5.2f)  H = %+.3e   H_LC = %+.3e\n", u, v, r.H, lc.H);
        }
    }

    const auto pts = sample_grid(scherk.surface, scherk.domain.u, scherk.domain.v, n, n);
    std::ofstream obj(path);
    for (const Vec3& p : pts) {
        obj << "v " << p.c1 << ' ' << p.c2 << ' ' << p.c3 << '\n';
    }
    for (int i = 0; i + 1 < n; ++i) {
        for (int j = 0; j + 1 < n; ++j) {
            const int a = i * n + j + 1;
            obj << "f " << a << ' ' << a + n << ' ' << a + n + 1 << ' ' << a + 1 << '\n';
        }
    }
    std::cout << "wrote " << pts.size() << " vertices to " << path << "\n";
    return obj ? 0 : 1;
}
