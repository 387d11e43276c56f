// End-to-end walkthrough of the library: build the reference designs,
// enumerate their loadouts, certify one cell both ways, and print a
// bounds sweep table.
//
//   ./demo_diversity [max_n]

#include <cstdlib>
#include <iostream>

#include <loadout/loadout.hpp>

using namespace loadout;

int main(int argc, char** argv) {
    const int max_n = argc > 1 ? std::atoi(argv[1]) : 8;
    if (max_n < 4 || max_n > 12) {
        std::cerr << "max_n must be between 4 and 12\n";
        return 2;
    }

    std::cout << "== certificate walkthrough (width-2 tight design, n = 4) ==\n";
    Design d2 = exact_design_m2(4);
    auto cert = cells::cell_certificate(d2, {2, 3});
    std::cout << "subset {2,3}: " << serialize::cell_status_name(cert.status)
              << ", dual y = (" << to_string(cert.certificate->y[0]) << ", "
              << to_string(cert.certificate->y[1]) << "), strict margin "
              << to_string(cert.certificate->strict_margin) << "\n";
    auto oracle = lp::verify_loadout(d2, {2, 3});
    std::cout << "oracle cross-check: " << (oracle.confirmed ? "confirmed" : "refuted")
              << " (right-hand side " << to_string(oracle.b[0]) << ", "
              << to_string(oracle.b[1]) << ")\n\n";

    std::cout << "== loadout counts vs bounds ==\n";
    std::cout << serialize::sweep_csv_header() << "\n";
    std::vector<int> ns;
    for (int n = 4; n <= max_n; ++n) ns.push_back(n);
    for (const auto& row : bounds::sweep(DesignKind::ExactM2, ns, 2, {2}))
        std::cout << serialize::sweep_csv_row(row) << "\n";
    for (const auto& row :
         bounds::sweep(DesignKind::ExactM3, ns, 3, {2, 3}, bounds::SweepMethod::Cells,
                       {}, 1024))
        std::cout << serialize::sweep_csv_row(row) << "\n";
    for (const auto& row : bounds::sweep(DesignKind::MomentCurve, {5, 6}, 4, {3, 4}))
        std::cout << serialize::sweep_csv_row(row) << "\n";

    std::cout << "\n== asymptotics: achieved fraction of the upper bound ==\n";
    for (int m : {3, 4, 5}) {
        auto rep = bounds::asymptotic_report(m, m, {20, 50, 100, 200});
        std::cout << "m = " << m << ", k = " << m << ":";
        for (const auto& row : rep.rows) {
            double approx = mpq_class(row.ratio).get_d();
            std::cout << "  f(" << row.n << ") ratio " << approx;
        }
        std::cout << (rep.monotone_nondecreasing ? "  (nondecreasing)" : "") << "\n";
    }
    return 0;
}
