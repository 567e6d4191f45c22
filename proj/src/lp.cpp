#include "fisherce/lp.hpp"

#include "fisherce/errors.hpp"

#include <limits>

namespace fisherce {

int LinearProgram::add_row(std::vector<Rational> coefficients, Rational bound) {
    coefficients.resize(static_cast<std::size_t>(variables));
    rows.push_back(std::move(coefficients));
    rhs.push_back(std::move(bound));
    return static_cast<int>(rows.size()) - 1;
}

namespace {

// x_basic[r] = beta[r] - sum_k T[r][k] * x_nonbasic[k];  z = z0 + sum_k d[k] * x_nonbasic[k].
class Dictionary {
  public:
    explicit Dictionary(const LinearProgram& lp)
        : rows_(lp.rows.size()), cols_(static_cast<std::size_t>(lp.variables)), t_(rows_ * cols_),
          beta_(lp.rhs), d_(lp.objective), z0_(0), nonbasic_(cols_), basic_(rows_) {
        d_.resize(cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (beta_[r] < 0)
                throw InvalidInput("linear program needs a nonnegative right-hand side");
            for (std::size_t k = 0; k < cols_ && k < lp.rows[r].size(); ++k)
                t_[r * cols_ + k] = lp.rows[r][k];
            basic_[r] = static_cast<int>(cols_ + r);
        }
        for (std::size_t k = 0; k < cols_; ++k)
            nonbasic_[k] = static_cast<int>(k);
    }

    LpSolution run(const std::optional<Rational>& stop_above) {
        for (;;) {
            if (stop_above && z0_ > *stop_above)
                return finish(LpStatus::TargetReached);
            std::size_t k = entering();
            if (k == cols_)
                return finish(LpStatus::Optimal);
            std::size_t r = leaving(k);
            if (r == rows_)
                return finish(LpStatus::Unbounded);
            pivot(r, k);
        }
    }

  private:
    Rational& at(std::size_t r, std::size_t k) { return t_[r * cols_ + k]; }

    std::size_t entering() const {
        std::size_t best = cols_;
        for (std::size_t k = 0; k < cols_; ++k)
            if (sgn(d_[k]) > 0 && (best == cols_ || nonbasic_[k] < nonbasic_[best]))
                best = k;
        return best;
    }

    std::size_t leaving(std::size_t k) {
        std::size_t best = rows_;
        Rational best_ratio;
        Rational ratio;
        for (std::size_t r = 0; r < rows_; ++r) {
            const Rational& a = at(r, k);
            if (sgn(a) <= 0)
                continue;
            ratio = beta_[r] / a;
            if (best == rows_ || ratio < best_ratio || (ratio == best_ratio && basic_[r] < basic_[best])) {
                best = r;
                best_ratio = ratio;
            }
        }
        return best;
    }

    void pivot(std::size_t r, std::size_t k) {
        const Rational inv = 1 / at(r, k);
        for (std::size_t j = 0; j < cols_; ++j)
            if (j != k)
                at(r, j) *= inv;
        at(r, k) = inv;
        beta_[r] *= inv;

        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || sgn(at(i, k)) == 0)
                continue;
            const Rational f = at(i, k);
            for (std::size_t j = 0; j < cols_; ++j)
                if (j != k && sgn(at(r, j)) != 0)
                    at(i, j) -= f * at(r, j);
            at(i, k) = -f * inv;
            beta_[i] -= f * beta_[r];
        }

        if (sgn(d_[k]) != 0) {
            const Rational f = d_[k];
            z0_ += f * beta_[r];
            for (std::size_t j = 0; j < cols_; ++j)
                if (j != k && sgn(at(r, j)) != 0)
                    d_[j] -= f * at(r, j);
            d_[k] = -f * inv;
        }
        std::swap(basic_[r], nonbasic_[k]);
    }

    LpSolution finish(LpStatus status) const {
        LpSolution out;
        out.status = status;
        out.value = z0_;
        out.primal.assign(cols_, Rational(0));
        for (std::size_t r = 0; r < rows_; ++r)
            if (static_cast<std::size_t>(basic_[r]) < cols_)
                out.primal[static_cast<std::size_t>(basic_[r])] = beta_[r];
        if (status == LpStatus::Optimal) {
            out.dual.assign(rows_, Rational(0));
            for (std::size_t k = 0; k < cols_; ++k)
                if (static_cast<std::size_t>(nonbasic_[k]) >= cols_)
                    out.dual[static_cast<std::size_t>(nonbasic_[k]) - cols_] = -d_[k];
        }
        return out;
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<Rational> t_;
    std::vector<Rational> beta_;
    std::vector<Rational> d_;
    Rational z0_;
    std::vector<int> nonbasic_;
    std::vector<int> basic_;
};

} // namespace

LpSolution maximize(const LinearProgram& lp, const std::optional<Rational>& stop_above) {
    if (lp.rhs.size() != lp.rows.size())
        throw InvalidInput("linear program has mismatched row and bound counts");
    return Dictionary(lp).run(stop_above);
}

bool verify_dual_bound(const LinearProgram& lp, std::span<const Rational> y, const Rational& bound) {
    if (y.size() != lp.rows.size())
        return false;
    Rational total = 0;
    for (std::size_t r = 0; r < y.size(); ++r) {
        if (y[r] < 0)
            return false;
        total += y[r] * lp.rhs[r];
    }
    if (total > bound)
        return false;
    for (std::size_t k = 0; k < static_cast<std::size_t>(lp.variables); ++k) {
        Rational column = 0;
        for (std::size_t r = 0; r < y.size(); ++r)
            if (sgn(y[r]) != 0 && k < lp.rows[r].size())
                column += y[r] * lp.rows[r][k];
        const Rational c = k < lp.objective.size() ? lp.objective[k] : Rational(0);
        if (column < c)
            return false;
    }
    return true;
}

} // namespace fisherce
