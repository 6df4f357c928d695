#include "initial_periods/periods.hpp"

#include <fstream>
#include <sstream>

#include "exactalg/matrix.hpp"
#include "griffiths_dwork/reduction.hpp"
#include "numerics/serialize.hpp"
#include "support/errors.hpp"

namespace heights::initial_periods {
namespace {

using numerics::Ball;
using numerics::BallMat;

ZMat kronecker(const ZMat& a, const ZMat& b) {
    size_t ar = a.size(), ac = a[0].size(), br = b.size(), bc = b[0].size();
    ZMat out(ar * br, std::vector<mpz_class>(ac * bc));
    for (size_t i = 0; i < ar; ++i)
        for (size_t j = 0; j < ac; ++j)
            for (size_t k = 0; k < br; ++k)
                for (size_t l = 0; l < bc; ++l) out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
    return out;
}

bool next_combination(std::vector<size_t>& c, size_t n) {
    size_t r = c.size();
    for (size_t i = r; i-- > 0;) {
        if (c[i] + (r - i) < n) {
            ++c[i];
            for (size_t j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

ZMat submatrix(const ZMat& s, const std::vector<size_t>& idx) {
    ZMat out(idx.size(), std::vector<mpz_class>(idx.size()));
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j) out[i][j] = s[idx[i]][idx[j]];
    return out;
}

Ball unit_phase(mpq_class q, mpfr_prec_t prec) {
    q.canonicalize();
    Ball arg = numerics::ball_pi(prec) * Ball::from_mpq(q, prec);
    return numerics::ball_cos(arg) +
           Ball::from_mpq_complex(0, 1, prec) * numerics::ball_sin(arg);
}

gd::HypersurfaceFamily fermat_family(long degree, long dimension) {
    static const char* kVars[] = {"x", "y", "z", "w", "u"};
    std::ostringstream text;
    text << "vars:";
    for (long i = 0; i < dimension + 2; ++i) text << (i ? ", " : " ") << kVars[i];
    text << "\ndegree: " << degree << "\ndim: " << dimension << "\npoly:";
    for (long i = 0; i < dimension + 2; ++i)
        text << (i ? " + " : " ") << kVars[i] << "^" << degree;
    text << "\n";
    return gd::parse_family_text(text.str());
}

BallMat conj_transpose(const BallMat& a) {
    BallMat out(a.cols(), a.rows(), a.prec());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) out.at(j, i) = a.at(i, j).conj();
    return out;
}

BallMat exact_inverse_ball(const ZMat& m, mpfr_prec_t prec) {
    size_t n = m.size();
    exactalg::Mat<mpq_class> q(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) q.at(i, j) = mpq_class(m[i][j]);
    auto inv = exactalg::inverse(q);
    if (!inv) throw MathError("intersection matrix is singular");
    BallMat out(n, n, prec);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out.at(i, j) = Ball::from_mpq(inv->at(i, j), prec);
    return out;
}

void check_supported(long degree, long dimension) {
    if (!((degree == 4 && dimension == 1) || (degree == 3 && dimension == 3)))
        throw UsageError("unsupported Fermat case: need degree 4 dimension 1 or degree 3 dimension 3");
}

}  // namespace

FermatCellLattice fermat_cell_lattice(long degree, long dimension) {
    check_supported(degree, dimension);
    FermatCellLattice lat;
    lat.degree = degree;
    lat.dimension = dimension;

    long w = degree - 1;      // cell indices per coordinate
    long m = dimension + 1;   // affine coordinates

    // Per-coordinate Seifert block: -1 on the diagonal, +1 below it.
    ZMat l1(w, std::vector<mpz_class>(w));
    for (long a = 0; a < w; ++a) {
        l1[a][a] = -1;
        if (a + 1 < w) l1[a + 1][a] = 1;
    }
    ZMat l = l1;
    for (long i = 1; i < m; ++i) l = kronecker(l, l1);

    size_t cells = l.size();
    lat.cell_pairing = ZMat(cells, std::vector<mpz_class>(cells));
    for (size_t i = 0; i < cells; ++i)
        for (size_t j = 0; j < cells; ++j) lat.cell_pairing[i][j] = l[i][j] - l[j][i];

    for (size_t idx = 0; idx < cells; ++idx) {
        std::vector<long> a(m);
        size_t rem = idx;
        for (long j = m; j-- > 0;) {
            a[j] = static_cast<long>(rem % w);
            rem /= w;
        }
        lat.cells.push_back(std::move(a));
    }

    auto smith = exactalg::smith_normal_form(lat.cell_pairing);
    size_t rank = 0;
    for (size_t i = 0; i < cells; ++i)
        if (smith.D[i][i] != 0) ++rank;

    std::vector<size_t> comb(rank);
    for (size_t i = 0; i < rank; ++i) comb[i] = i;
    while (true) {
        ZMat sub = submatrix(lat.cell_pairing, comb);
        mpz_class det = exactalg::zmat_det(sub);
        if (det == 1 || det == -1) {
            lat.basis_cells = comb;
            lat.basis_pairing = std::move(sub);
            return lat;
        }
        if (!next_combination(comb, cells))
            throw MathError("no subset of twisted cells gives a unimodular quotient basis");
    }
}

Ball fermat_cell_period(long degree, long dimension, const std::vector<long>& exps, int pole,
                        const std::vector<long>& cell, mpfr_prec_t prec) {
    long m = dimension + 1;
    if (static_cast<long>(exps.size()) != m + 1 || static_cast<long>(cell.size()) != m)
        throw UsageError("exponent or cell arity mismatch");

    std::vector<long> v(m);
    long vsum = 0;
    for (long j = 0; j < m; ++j) {
        v[j] = exps[j] + 1;
        vsum += v[j];
    }
    mpq_class sigma(vsum, degree);
    sigma.canonicalize();

    // Rational factor prod_{l=1}^{pole-1} (sigma - l)/l and the chart-count
    // power of 1/d.
    mpq_class scale(1);
    for (long l = 1; l < pole; ++l) scale *= (sigma - l) / mpq_class(l);
    for (long j = 0; j < m; ++j) scale /= degree;

    Ball gammas = Ball::from_int(1, prec);
    for (long j = 0; j < m; ++j) {
        mpq_class beta(v[j], degree);
        beta.canonicalize();
        gammas = gammas * numerics::ball_gamma_rational(beta, prec);
    }
    gammas = gammas / numerics::ball_gamma_rational(sigma, prec);

    // (-1)^pole mu^{vsum} zeta^{<a,v>} as a single phase, mu = e^{i pi/d}.
    long character = 0;
    for (long j = 0; j < m; ++j) character += cell[j] * v[j];
    Ball w = unit_phase(mpq_class(vsum + degree * pole + 2 * character, degree), prec);
    for (long j = 0; j < m; ++j)
        w = w * (Ball::from_int(1, prec) - unit_phase(mpq_class(2 * v[j], degree), prec));

    return Ball::from_mpq(scale, prec) * gammas * w;
}

InitialPeriodData fermat_periods(long degree, long dimension, mpfr_prec_t prec) {
    check_supported(degree, dimension);
    FermatCellLattice lat = fermat_cell_lattice(degree, dimension);
    gd::HypersurfaceFamily fam = fermat_family(degree, dimension);
    gd::ReductionEngine engine(fam);
    const auto& basis = engine.basis();
    size_t size = basis.size();
    if (size != lat.basis_cells.size())
        throw MathError("Fermat cohomology basis size does not match the cell lattice rank");

    BallMat p(size, size, prec);
    for (size_t i = 0; i < size; ++i) {
        std::vector<long> exps(dimension + 2);
        for (long j = 0; j < dimension + 2; ++j)
            exps[j] = basis[i].monomial.exp(static_cast<int>(j), dimension + 2);
        for (size_t j = 0; j < size; ++j)
            p.at(i, j) = fermat_cell_period(degree, dimension, exps, basis[i].pole_order,
                                            lat.cells[lat.basis_cells[j]], prec);
    }

    ZMat inter = lat.basis_pairing;
    mpz_class det = exactalg::zmat_det(inter);
    if (det != 1 && det != -1) throw MathError("cell quotient pairing is not unimodular");

    // Pin the pairing sign: the filtration block of i P M^{-1} conj(P)^T
    // must be definite, positive for dimension 1 mod 4 and negative for
    // dimension 3 mod 4.
    size_t hol = engine.filtration_block_rows();
    BallMat minv = exact_inverse_ball(inter, prec);
    BallMat p_hol(hol, size, prec);
    for (size_t i = 0; i < hol; ++i)
        for (size_t j = 0; j < size; ++j) p_hol.at(i, j) = p.at(i, j);
    Ball iu = Ball::from_mpq_complex(0, 1, prec);
    BallMat e = p_hol * minv * conj_transpose(p_hol);
    BallMat h(hol, hol, prec);
    for (size_t i = 0; i < hol; ++i)
        for (size_t j = 0; j < hol; ++j)
            h.at(i, j) = (iu * e.at(i, j) + (iu * e.at(j, i)).conj()).scaled_2exp(-1);
    int target = dimension % 4 == 1 ? 1 : -1;
    BallMat h_neg(hol, hol, prec);
    for (size_t i = 0; i < hol; ++i)
        for (size_t j = 0; j < hol; ++j) h_neg.at(i, j) = -h.at(i, j);
    if (numerics::ball_positive_definite(target > 0 ? h : h_neg)) {
        // sign already correct
    } else if (numerics::ball_positive_definite(target > 0 ? h_neg : h)) {
        for (auto& row : inter)
            for (auto& x : row) x = -x;
        minv = exact_inverse_ball(inter, prec);
    } else {
        throw MathError("period pairing definiteness cannot be certified");
    }

    // Bilinear consistency: P M^{-1} P^T is skew and vanishes on the
    // filtration block in ball arithmetic.
    BallMat b = p * minv * p.transpose();
    for (size_t i = 0; i < size; ++i)
        for (size_t j = 0; j < size; ++j) {
            if (!(b.at(i, j) + b.at(j, i)).contains_zero())
                throw MathError("period pairing is not antisymmetric within error bounds");
            if (i < hol && j < hol && !b.at(i, j).contains_zero())
                throw MathError("filtration block of the period pairing does not vanish");
        }

    InitialPeriodData out;
    out.degree = degree;
    out.dimension = dimension;
    out.t0 = 0;
    out.intersection = std::move(inter);
    out.periods = std::move(p);
    out.prec_bits = prec;
    return out;
}

std::string export_period_data(const InitialPeriodData& data) {
    std::ostringstream out;
    out << "period data\n";
    out << "degree " << data.degree << "\n";
    out << "dimension " << data.dimension << "\n";
    out << "t0 " << data.t0.get_str() << "\n";
    out << "prec " << data.prec_bits << "\n";
    out << "size " << data.periods.rows() << "\n";
    out << "intersection\n";
    for (const auto& row : data.intersection) {
        for (size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j].get_str();
        out << "\n";
    }
    out << "periods\n";
    for (size_t i = 0; i < data.periods.rows(); ++i)
        for (size_t j = 0; j < data.periods.cols(); ++j)
            out << numerics::serialize_ball(data.periods.at(i, j)) << "\n";
    out << "end\n";
    return out.str();
}

InitialPeriodData import_period_data_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    auto next_line = [&](const char* what) {
        if (!std::getline(in, line)) throw IoError(std::string("period data file ends before ") + what);
        return line;
    };
    if (next_line("header") != "period data") throw IoError("period data file has a bad header");

    InitialPeriodData out;
    size_t size = 0;
    auto parse_tagged = [&](const char* tag) {
        next_line(tag);
        std::istringstream ls(line);
        std::string key, val;
        if (!(ls >> key >> val) || key != tag)
            throw IoError(std::string("period data file is missing ") + tag);
        return val;
    };
    try {
        out.degree = std::stol(parse_tagged("degree"));
        out.dimension = std::stol(parse_tagged("dimension"));
        out.t0 = mpq_class(parse_tagged("t0"));
        out.prec_bits = std::stol(parse_tagged("prec"));
        size = std::stoul(parse_tagged("size"));
    } catch (const std::invalid_argument&) {
        throw IoError("period data file has a malformed header value");
    }
    if (out.degree < 3 || out.dimension < 1 || out.prec_bits < 2 || size < 2 || size % 2 != 0)
        throw IoError("period data file has inconsistent header values");

    if (next_line("intersection") != "intersection")
        throw IoError("period data file is missing the intersection section");
    out.intersection.assign(size, std::vector<mpz_class>(size));
    for (size_t i = 0; i < size; ++i) {
        std::istringstream ls(next_line("intersection row"));
        for (size_t j = 0; j < size; ++j) {
            std::string tok;
            if (!(ls >> tok)) throw IoError("period data intersection row is too short");
            try {
                out.intersection[i][j] = mpz_class(tok);
            } catch (const std::invalid_argument&) {
                throw IoError("period data intersection entry is not an integer");
            }
        }
        std::string extra;
        if (ls >> extra) throw IoError("period data intersection row is too long");
    }

    if (next_line("periods") != "periods")
        throw IoError("period data file is missing the periods section");
    out.periods = BallMat(size, size, out.prec_bits);
    for (size_t i = 0; i < size; ++i)
        for (size_t j = 0; j < size; ++j)
            out.periods.at(i, j) = numerics::parse_ball(next_line("period entry"), out.prec_bits);
    if (next_line("trailer") != "end") throw IoError("period data file is missing its end marker");

    int parity = out.dimension % 2 == 0 ? 1 : -1;
    for (size_t i = 0; i < size; ++i)
        for (size_t j = 0; j < size; ++j)
            if (out.intersection[i][j] != parity * out.intersection[j][i])
                throw IoError("period data intersection matrix has the wrong symmetry");
    mpz_class det = exactalg::zmat_det(out.intersection);
    if (det != 1 && det != -1) throw IoError("period data intersection matrix is not unimodular");
    return out;
}

InitialPeriodData import_period_data(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open period data file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return import_period_data_text(buf.str());
}

}  // namespace heights::initial_periods
