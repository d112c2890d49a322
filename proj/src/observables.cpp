#include "lindsym/observables.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>

#include "lindsym/errors.hpp"

namespace lindsym {

cplx expect(const std::vector<OperatorString>& op, const SteadyState& ss) {
    const auto& basis = *ss.basis;
    const int v = basis.sites();
    const auto& action = basis.action();
    cplx acc{0.0, 0.0};
    for (Eigen::Index j = 0; j < ss.coefficients.size(); ++j) {
        const cplx cj = ss.coefficients[j];
        if (cj == cplx{0.0, 0.0}) continue;
        const auto& el = basis.at(static_cast<size_t>(j));
        const double amp = 1.0 / std::sqrt(static_cast<double>(el.orbit_size));
        // tr(O |n><m|) = <m|O|n>.
        cplx orbit_sum{0.0, 0.0};
        for (const auto& member : action.orbit_members(el.canonical)) {
            for (const auto& t : op) {
                if (auto r = apply_string(t, member.ket, v))
                    if (r->first == member.bra) orbit_sum += r->second;
            }
        }
        acc += cj * amp * orbit_sum;
    }
    return acc;
}

cplx expect(const OperatorString& op, const SteadyState& ss) {
    return expect(std::vector<OperatorString>{op}, ss);
}

Magnetization magnetization(const SteadyState& ss) {
    const int v = ss.basis->sites();
    const LocalOp axes[] = {LocalOp::sx, LocalOp::sy, LocalOp::sz};
    double means[3] = {0.0, 0.0, 0.0};
    for (int a = 0; a < 3; ++a) {
        double lo = 0.0, hi = 0.0;
        for (int i = 0; i < v; ++i) {
            const cplx val =
                expect(OperatorString(cplx{1.0, 0.0}, {{i, axes[a]}}), ss);
            const double x = val.real();
            if (i == 0) {
                lo = hi = x;
            } else {
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
            means[a] += x / v;
        }
        if (hi - lo > 1e-10)
            throw internal_consistency_error("site-dependent magnetization (spread " +
                                             std::to_string(hi - lo) + ")");
    }
    return {means[0], means[1], means[2]};
}

SusceptibilityTensor susceptibility(const FieldModelBuilder& builder,
                                    std::shared_ptr<const InvariantBasis> basis, double delta,
                                    const SolverOptions& opts, int threads) {
    if (delta <= 0.0) throw std::invalid_argument("field step must be positive");
    if (!is_parity_preserving(builder(0.0, 0.0)))
        throw std::invalid_argument("susceptibility needs a parity-preserving h=0 model");

    // Four independent solves: field +/-delta along x and along y.
    auto solve_at = [&](double hx, double hy) {
        return magnetization(solve_model(builder(hx, hy), basis, Sector::full, opts));
    };
    Magnetization mags[4];
    const double fields[4][2] = {{delta, 0.0}, {-delta, 0.0}, {0.0, delta}, {0.0, -delta}};
    if (threads > 1) {
        std::vector<std::future<Magnetization>> futs;
        for (const auto& f : fields)
            futs.push_back(std::async(std::launch::async, solve_at, f[0], f[1]));
        for (int i = 0; i < 4; ++i) mags[i] = futs[static_cast<size_t>(i)].get();
    } else {
        for (int i = 0; i < 4; ++i) mags[i] = solve_at(fields[i][0], fields[i][1]);
    }

    SusceptibilityTensor chi;
    chi.xx = (mags[0].mx - mags[1].mx) / (2.0 * delta);
    chi.yx = (mags[0].my - mags[1].my) / (2.0 * delta);
    chi.xy = (mags[2].mx - mags[3].mx) / (2.0 * delta);
    chi.yy = (mags[2].my - mags[3].my) / (2.0 * delta);
    return chi;
}

double chi_av(const SusceptibilityTensor& chi, int n_theta) {
    if (n_theta < 8) throw std::invalid_argument("chi_av needs at least 8 quadrature points");
    double acc = 0.0;
    for (int k = 0; k < n_theta; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / n_theta;
        const double mx = chi.xx * std::cos(theta) + chi.xy * std::sin(theta);
        const double my = chi.yx * std::cos(theta) + chi.yy * std::sin(theta);
        acc += std::hypot(mx, my);
    }
    return acc / n_theta;
}

std::vector<SpectrumRecord> coefficient_spectrum(const SteadyState& ss) {
    std::vector<SpectrumRecord> records;
    records.reserve(static_cast<size_t>(ss.coefficients.size()));
    for (Eigen::Index j = 0; j < ss.coefficients.size(); ++j) {
        const auto& el = ss.basis->at(static_cast<size_t>(j));
        SpectrumRecord rec;
        rec.basis_index = static_cast<size_t>(j);
        rec.c = ss.coefficients[j];
        rec.abs_c = std::abs(rec.c);
        rec.delta_n = delta_n(el.canonical);
        rec.parity = el.parity;
        rec.orbit_size = el.orbit_size;
        records.push_back(rec);
    }
    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        if (a.abs_c != b.abs_c) return a.abs_c > b.abs_c;
        return a.basis_index < b.basis_index;
    });
    for (size_t r = 0; r < records.size(); ++r) records[r].rank = r + 1;
    return records;
}

}  // namespace lindsym
