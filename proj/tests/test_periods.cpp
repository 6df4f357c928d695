#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "griffiths_dwork/family.hpp"
#include "griffiths_dwork/reduction.hpp"
#include "initial_periods/periods.hpp"
#include "numerics/linalg.hpp"
#include "oracle_quadrature.hpp"
#include "support/errors.hpp"

using heights::IoError;
using heights::MathError;
using heights::UsageError;
using heights::numerics::Ball;
using heights::numerics::BallMat;
namespace ip = heights::initial_periods;
namespace gd = heights::gd;

namespace {

double upper_double(const heights::numerics::Real& r) { return mpfr_get_d(r.raw(), MPFR_RNDU); }

gd::ReductionEngine quartic_engine() {
    return gd::ReductionEngine(gd::parse_family_text(
        "vars: x, y, z\ndegree: 4\ndim: 1\npoly: x^4 + y^4 + z^4\n"));
}

std::vector<long> row_exponents(const gd::BasisElement& el, int nvars) {
    std::vector<long> exps(nvars);
    for (int j = 0; j < nvars; ++j) exps[j] = el.monomial.exp(j, nvars);
    return exps;
}

}  // namespace

TEST_CASE("quartic cell periods match direct contour integration") {
    gd::ReductionEngine engine = quartic_engine();
    const auto& basis = engine.basis();
    REQUIRE(basis.size() == 6);

    ip::FermatCellLattice lat = ip::fermat_cell_lattice(4, 1);
    REQUIRE(lat.cells.size() == 9);

    for (const auto& el : basis) {
        std::vector<long> exps = row_exponents(el, 3);
        std::vector<Ball> numeric =
            heights::testoracle::quartic_row_periods_quadrature(exps, el.pole_order, 352);
        REQUIRE(numeric.size() == 9);
        for (size_t c = 0; c < 9; ++c) {
            Ball closed = ip::fermat_cell_period(4, 1, exps, el.pole_order, lat.cells[c], 448);
            CHECK(closed.intersects(numeric[c]));
            Ball diff = closed - numeric[c];
            double gap = upper_double(diff.abs_upper());
            double scale = 1.0 + upper_double(closed.abs_upper());
            CHECK(gap <= 1e-20 * scale);
        }
    }
}

TEST_CASE("quartic period data is symplectic and oracle-consistent") {
    ip::InitialPeriodData data = ip::fermat_periods(4, 1, 512);
    CHECK(data.periods.rows() == 6);
    CHECK(data.periods.cols() == 6);
    CHECK(data.weight_index() == 2);
    CHECK(data.intersection.size() == 6);

    mpz_class det = heights::exactalg::zmat_det(data.intersection);
    CHECK((det == 1 || det == -1));
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j)
            CHECK(data.intersection[i][j] == -data.intersection[j][i]);

    // The published columns are a subset of the cells; compare each entry of
    // the period matrix against the quadrature value for its cell.
    gd::ReductionEngine engine = quartic_engine();
    ip::FermatCellLattice lat = ip::fermat_cell_lattice(4, 1);
    const auto& basis = engine.basis();
    for (size_t i = 0; i < basis.size(); ++i) {
        std::vector<long> exps = row_exponents(basis[i], 3);
        std::vector<Ball> numeric =
            heights::testoracle::quartic_row_periods_quadrature(exps, basis[i].pole_order, 352);
        for (size_t j = 0; j < 6; ++j) {
            const Ball& entry = data.periods.at(i, j);
            const Ball& oracle = numeric[lat.basis_cells[j]];
            CHECK(entry.intersects(oracle));
            Ball diff = entry - oracle;
            double gap = upper_double(diff.abs_upper());
            CHECK(gap <= 1e-20 * (1.0 + upper_double(entry.abs_upper())));
        }
    }
}

TEST_CASE("quartic bilinear relations hold in ball arithmetic") {
    ip::InitialPeriodData data = ip::fermat_periods(4, 1, 320);
    size_t n = data.periods.rows();
    heights::exactalg::Mat<mpq_class> mq(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) mq.at(i, j) = mpq_class(data.intersection[i][j]);
    auto minv_q = heights::exactalg::inverse(mq);
    REQUIRE(minv_q.has_value());
    BallMat minv(n, n, 320);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) minv.at(i, j) = Ball::from_mpq(minv_q->at(i, j), 320);

    BallMat b = data.periods * minv * data.periods.transpose();
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) CHECK(b.at(i, j).contains_zero());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) CHECK((b.at(i, j) + b.at(j, i)).contains_zero());

    // Positivity pin: i P_hol M^{-1} conj(P_hol)^T is positive definite.
    BallMat ph(3, n, 320);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < n; ++j) ph.at(i, j) = data.periods.at(i, j);
    BallMat phc(n, 3, 320);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < n; ++j) phc.at(j, i) = data.periods.at(i, j).conj();
    BallMat e = ph * minv * phc;
    Ball iu = Ball::from_mpq_complex(0, 1, 320);
    BallMat h(3, 3, 320);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            h.at(i, j) = (iu * e.at(i, j) + (iu * e.at(j, i)).conj()).scaled_2exp(-1);
    CHECK(heights::numerics::ball_positive_definite(h));
}

TEST_CASE("cubic threefold period data passes the Hodge pattern checks") {
    ip::InitialPeriodData data = ip::fermat_periods(3, 3, 320);
    size_t n = data.periods.rows();
    REQUIRE(n == 10);
    CHECK(data.weight_index() == 4);

    mpz_class det = heights::exactalg::zmat_det(data.intersection);
    CHECK((det == 1 || det == -1));

    heights::exactalg::Mat<mpq_class> mq(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) mq.at(i, j) = mpq_class(data.intersection[i][j]);
    auto minv_q = heights::exactalg::inverse(mq);
    REQUIRE(minv_q.has_value());
    BallMat minv(n, n, 320);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) minv.at(i, j) = Ball::from_mpq(minv_q->at(i, j), 320);

    BallMat b = data.periods * minv * data.periods.transpose();
    // Pole order <= 2 rows pair to zero among themselves; the cross block
    // must be invertible for the full pairing to stay unimodular.
    for (size_t i = 0; i < 5; ++i)
        for (size_t j = 0; j < 5; ++j) CHECK(b.at(i, j).contains_zero());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) CHECK((b.at(i, j) + b.at(j, i)).contains_zero());
    BallMat cross(5, 5, 320);
    for (size_t i = 0; i < 5; ++i)
        for (size_t j = 0; j < 5; ++j) cross.at(i, j) = b.at(i, 5 + j);
    CHECK_NOTHROW(heights::numerics::ball_matrix_solve(cross, BallMat::identity(5, 320)));
}

TEST_CASE("period data export and import round trip") {
    ip::InitialPeriodData data = ip::fermat_periods(4, 1, 256);
    std::string text = ip::export_period_data(data);
    ip::InitialPeriodData back = ip::import_period_data_text(text);
    CHECK(back.degree == 4);
    CHECK(back.dimension == 1);
    CHECK(back.t0 == data.t0);
    CHECK(back.prec_bits == 256);
    CHECK(back.weight_index() == 2);
    CHECK(back.intersection == data.intersection);
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j) CHECK(back.periods.at(i, j).contains(data.periods.at(i, j)));
}

TEST_CASE("period data import rejects bad input") {
    ip::InitialPeriodData data = ip::fermat_periods(4, 1, 256);
    std::string text = ip::export_period_data(data);

    CHECK_THROWS_AS(ip::import_period_data_text("not period data\n"), IoError);
    CHECK_THROWS_AS(ip::import_period_data_text(text.substr(0, text.size() / 2)), IoError);

    // Zero intersection matrix: well formed but not unimodular.
    ip::InitialPeriodData degenerate = data;
    for (auto& row : degenerate.intersection)
        for (auto& x : row) x = 0;
    CHECK_THROWS_AS(ip::import_period_data_text(ip::export_period_data(degenerate)), IoError);

    // Symmetry violation.
    ip::InitialPeriodData skewless = data;
    skewless.intersection[0][1] += 1;
    CHECK_THROWS_AS(ip::import_period_data_text(ip::export_period_data(skewless)), IoError);
}

TEST_CASE("perturbed precision stays entrywise consistent") {
    ip::InitialPeriodData lo = ip::fermat_periods(4, 1, 256);
    ip::InitialPeriodData hi = ip::fermat_periods(4, 1, 512);
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j) CHECK(lo.periods.at(i, j).intersects(hi.periods.at(i, j)));
}

TEST_CASE("cell lattice invariants") {
    ip::FermatCellLattice c = ip::fermat_cell_lattice(4, 1);
    CHECK(c.cells.size() == 9);
    CHECK(c.basis_cells == std::vector<size_t>{0, 1, 2, 3, 4, 5});

    ip::FermatCellLattice t = ip::fermat_cell_lattice(3, 3);
    CHECK(t.cells.size() == 16);
    CHECK(t.basis_cells.size() == 10);
    CHECK(t.basis_cells == std::vector<size_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});

    CHECK_THROWS_AS(ip::fermat_cell_lattice(5, 1), UsageError);
    CHECK_THROWS_AS(ip::fermat_periods(4, 3, 256), UsageError);
}
