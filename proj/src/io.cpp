#include "lindsym/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lindsym/errors.hpp"

namespace lindsym {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string spectrum_csv(const std::vector<SpectrumRecord>& records) {
    std::ostringstream os;
    os << "index,re_c,im_c,abs_c,parity,orbit_size\n";
    for (const auto& rec : records) {
        os << rec.basis_index << ',' << fmt17(rec.c.real()) << ',' << fmt17(rec.c.imag()) << ','
           << fmt17(rec.abs_c) << ',' << rec.parity << ',' << rec.orbit_size << '\n';
    }
    return os.str();
}

std::string basis_csv(const InvariantBasis& basis) {
    std::ostringstream os;
    os << "index,canonical_ket,canonical_bra,orbit_size,delta_n,parity\n";
    for (size_t i = 0; i < basis.size(); ++i) {
        const auto& el = basis.at(i);
        os << i << ',' << el.canonical.ket << ',' << el.canonical.bra << ',' << el.orbit_size
           << ',' << delta_n(el.canonical) << ',' << el.parity << '\n';
    }
    return os.str();
}

std::string sparse_coo_dump(const ReducedLiouvillian& red) {
    std::ostringstream os;
    os << red.dim() << ' ' << (red.sector == Sector::even_only ? "even" : "full") << '\n';
    for (int k = 0; k < red.entries.outerSize(); ++k)
        for (SparseCplx::InnerIterator it(red.entries, k); it; ++it)
            os << it.row() << ' ' << it.col() << ' ' << fmt17(it.value().real()) << ' '
               << fmt17(it.value().imag()) << '\n';
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open output file '" + path + "'");
    out << content;
}

}  // namespace lindsym
