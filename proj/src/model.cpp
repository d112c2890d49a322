#include "lindsym/model.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "lindsym/errors.hpp"

namespace lindsym {

const char* local_op_name(LocalOp op) {
    switch (op) {
        case LocalOp::sx: return "sx";
        case LocalOp::sy: return "sy";
        case LocalOp::sz: return "sz";
        case LocalOp::sp: return "s+";
        case LocalOp::sm: return "s-";
        case LocalOp::num: return "n";
    }
    return "?";
}

OperatorString::OperatorString(cplx coeff, std::vector<Factor> fs)
    : coefficient(coeff), factors(std::move(fs)) {
    std::sort(factors.begin(), factors.end());
    for (size_t i = 0; i + 1 < factors.size(); ++i)
        if (factors[i].site == factors[i + 1].site)
            throw std::invalid_argument("operator string has two factors on one site");
    for (const auto& f : factors)
        if (f.site < 0) throw std::invalid_argument("negative site index");
}

std::string OperatorString::describe() const {
    std::ostringstream os;
    os << "(" << coefficient.real();
    if (coefficient.imag() != 0.0) os << (coefficient.imag() < 0 ? "" : "+") << coefficient.imag() << "i";
    os << ")";
    for (const auto& f : factors) os << " " << local_op_name(f.op) << "[" << f.site << "]";
    return os.str();
}

OperatorString adjoint(const OperatorString& t) {
    OperatorString out = t;
    out.coefficient = std::conj(t.coefficient);
    for (auto& f : out.factors) {
        if (f.op == LocalOp::sp)
            f.op = LocalOp::sm;
        else if (f.op == LocalOp::sm)
            f.op = LocalOp::sp;
    }
    return out;
}

std::optional<std::pair<State, cplx>> apply_string(const OperatorString& t, State s, int v) {
    cplx amp = t.coefficient;
    State cur = s;
    for (const auto& f : t.factors) {
        if (f.site >= v) throw dimension_error("operator factor site out of range");
        const State mask = State{1} << f.site;
        const bool occupied = (cur & mask) != 0;
        switch (f.op) {
            case LocalOp::sx:
                cur ^= mask;
                break;
            case LocalOp::sy:
                amp *= occupied ? cplx{0.0, -1.0} : cplx{0.0, 1.0};
                cur ^= mask;
                break;
            case LocalOp::sz:
                amp *= occupied ? 1.0 : -1.0;
                break;
            case LocalOp::sp:
                if (occupied) return std::nullopt;
                cur |= mask;
                break;
            case LocalOp::sm:
                if (!occupied) return std::nullopt;
                cur &= ~mask;
                break;
            case LocalOp::num:
                if (!occupied) return std::nullopt;
                break;
        }
        if (amp == cplx{0.0, 0.0}) return std::nullopt;
    }
    return std::pair{cur, amp};
}

LindbladModel::LindbladModel(int v, std::vector<OperatorString> h, std::vector<Jump> js)
    : sites(v), hamiltonian(std::move(h)), jumps(std::move(js)) {
    if (v < 1) throw std::invalid_argument("model needs at least one site");
    auto check_sites = [v](const OperatorString& t) {
        for (const auto& f : t.factors)
            if (f.site >= v) throw dimension_error("term site exceeds model size");
    };
    for (const auto& t : hamiltonian) check_sites(t);
    for (const auto& j : jumps) {
        check_sites(j.op);
        if (j.rate < 0.0) throw std::invalid_argument("jump rates must be nonnegative");
    }
}

LindbladModel build_xyz(const Lattice& lat, double jx, double jy, double jz, double gamma,
                        BondConvention convention) {
    if (gamma <= 0.0) throw std::invalid_argument("build_xyz requires gamma > 0");
    const int v = lat.sites();
    std::vector<OperatorString> h;
    const std::pair<double, LocalOp> couplings[] = {
        {jx, LocalOp::sx}, {jy, LocalOp::sy}, {jz, LocalOp::sz}};
    for (const auto& [i, j] : lat.bonds(convention)) {
        for (const auto& [coupling, op] : couplings) {
            if (coupling == 0.0) continue;
            h.emplace_back(cplx{coupling, 0.0}, std::vector<Factor>{{i, op}, {j, op}});
        }
    }
    std::vector<Jump> jumps;
    jumps.reserve(static_cast<size_t>(v));
    for (int i = 0; i < v; ++i)
        jumps.push_back({OperatorString(cplx{1.0, 0.0}, {{i, LocalOp::sm}}), gamma});
    return LindbladModel(v, std::move(h), std::move(jumps));
}

std::vector<OperatorString> build_field(int v, double hx, double hy) {
    std::vector<OperatorString> terms;
    for (int i = 0; i < v; ++i) {
        if (hx != 0.0) terms.emplace_back(cplx{hx, 0.0}, std::vector<Factor>{{i, LocalOp::sx}});
        if (hy != 0.0) terms.emplace_back(cplx{hy, 0.0}, std::vector<Factor>{{i, LocalOp::sy}});
    }
    return terms;
}

std::vector<OperatorString> replicate_homogeneous(const Lattice& lat, const TermTemplate& tpl) {
    if (lat.kind == LatticeKind::chain) {
        for (const auto& f : tpl.factors)
            if (f.dy != 0) throw std::invalid_argument("chain templates must have dy = 0");
    }
    std::vector<OperatorString> terms;
    terms.reserve(static_cast<size_t>(lat.sites()));
    for (int y = 0; y < lat.l2; ++y) {
        for (int x = 0; x < lat.l1; ++x) {
            std::vector<Factor> factors;
            factors.reserve(tpl.factors.size());
            for (const auto& f : tpl.factors)
                factors.push_back({lat.site(x + f.dx, y + f.dy), f.op});
            terms.emplace_back(tpl.coefficient, std::move(factors));
        }
    }
    return terms;
}

LindbladModel build_homogeneous(const Lattice& lat, const std::vector<TermTemplate>& h_templates,
                                const std::vector<std::pair<TermTemplate, double>>& channels) {
    std::vector<OperatorString> h;
    for (const auto& tpl : h_templates)
        for (auto& term : replicate_homogeneous(lat, tpl)) h.push_back(std::move(term));
    std::vector<Jump> jumps;
    for (const auto& [tpl, rate] : channels)
        for (auto& op : replicate_homogeneous(lat, tpl)) jumps.push_back({std::move(op), rate});
    return LindbladModel(lat.sites(), std::move(h), std::move(jumps));
}

Parity parity_of(const OperatorString& t) {
    int flips = 0;
    for (const auto& f : t.factors)
        if (f.op == LocalOp::sx || f.op == LocalOp::sy || f.op == LocalOp::sp ||
            f.op == LocalOp::sm)
            ++flips;
    return flips % 2 == 0 ? Parity::even : Parity::odd;
}

Parity parity_of(const std::vector<OperatorString>& terms) {
    if (terms.empty()) return Parity::even;
    const Parity first = parity_of(terms.front());
    for (const auto& t : terms)
        if (parity_of(t) != first) return Parity::mixed;
    return first;
}

bool is_parity_preserving(const LindbladModel& m) {
    for (const auto& t : m.hamiltonian)
        if (parity_of(t) == Parity::odd) return false;
    return true;
}

namespace {

// Normal form for multiset comparison: (sorted factors, coefficient).
struct TermKey {
    std::vector<Factor> factors;
    cplx coefficient;

    friend bool operator==(const TermKey& a, const TermKey& b) {
        return a.factors == b.factors && a.coefficient == b.coefficient;
    }
    friend bool operator<(const TermKey& a, const TermKey& b) {
        if (a.factors != b.factors) return a.factors < b.factors;
        if (a.coefficient.real() != b.coefficient.real())
            return a.coefficient.real() < b.coefficient.real();
        return a.coefficient.imag() < b.coefficient.imag();
    }
};

TermKey term_key(const OperatorString& t, double scale = 1.0) {
    return {t.factors, t.coefficient * scale};
}

OperatorString permute_term(const SitePermutation& p, const OperatorString& t) {
    std::vector<Factor> fs = t.factors;
    for (auto& f : fs) f.site = p(f.site);
    return OperatorString(t.coefficient, std::move(fs));
}

}  // namespace

WeakSymmetryReport check_weak_symmetry(const LindbladModel& m, const SymmetryGroup& g) {
    WeakSymmetryReport report;
    std::vector<TermKey> h_ref, j_ref;
    for (const auto& t : m.hamiltonian) h_ref.push_back(term_key(t));
    for (const auto& j : m.jumps) j_ref.push_back(term_key(j.op, j.rate));
    std::sort(h_ref.begin(), h_ref.end());
    std::sort(j_ref.begin(), j_ref.end());

    for (size_t e = 0; e < g.order(); ++e) {
        const auto& p = g.element(e);
        std::vector<TermKey> h_img, j_img;
        for (const auto& t : m.hamiltonian) h_img.push_back(term_key(permute_term(p, t)));
        for (const auto& j : m.jumps) j_img.push_back(term_key(permute_term(p, j.op), j.rate));
        std::sort(h_img.begin(), h_img.end());
        std::sort(j_img.begin(), j_img.end());
        if (h_img != h_ref) {
            report.ok = false;
            report.witness = "element " + std::to_string(e) + ": Hamiltonian multiset changes";
            return report;
        }
        if (j_img != j_ref) {
            report.ok = false;
            report.witness = "element " + std::to_string(e) + ": jump multiset changes";
            return report;
        }
    }
    return report;
}

}  // namespace lindsym
