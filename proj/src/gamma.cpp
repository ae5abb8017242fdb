#include "sra/gamma.hpp"

namespace sra {

CyclicGroup::CyclicGroup(long long ell) : ell_(ell) {
    if (ell < 2)
        throw errors::precondition("cyclic group order must be >= 2 (the parameter c lives on "
                                   "Gamma \\ {1} and the l = 1 McKay quiver is degenerate)");
    // materialize the field table early so order-limit errors surface here
    (void)Cyclotomic::zeta(ell);
}

Cyclotomic CyclicGroup::character(long long j, long long a) const {
    return Cyclotomic::zeta_power(ell_, j * a);
}

Cyclotomic CyclicGroup::zeta(long long power) const { return Cyclotomic::zeta_power(ell_, power); }

ClassParameter ClassParameter::zero(long long ell) {
    ClassParameter c;
    c.ell = ell;
    c.values.assign(static_cast<std::size_t>(ell - 1), Cyclotomic(Rational(0), ell));
    return c;
}

Cyclotomic ClassParameter::at(long long a) const {
    if (a < 1 || a >= ell) throw errors::precondition("class parameter index must be in 1..ell-1");
    return values[static_cast<std::size_t>(a - 1)];
}

LambdaVector LambdaVector::from_rationals(long long ell, const std::vector<Rational>& vals) {
    if (static_cast<long long>(vals.size()) != ell)
        throw errors::dimension_mismatch("lambda vector must have length ell");
    LambdaVector l;
    l.ell = ell;
    for (const Rational& v : vals) l.values.emplace_back(v, ell);
    return l;
}

LambdaVector lambda_from_c(const CyclicGroup& group, const ClassParameter& c) {
    const long long ell = group.order();
    if (c.ell != ell) throw errors::order_mismatch("class parameter order differs from group order");
    if (static_cast<long long>(c.values.size()) != ell - 1)
        throw errors::dimension_mismatch("class parameter must have ell-1 values");
    LambdaVector lambda;
    lambda.ell = ell;
    for (long long j = 0; j < ell; ++j) {
        Cyclotomic acc(Rational(1), ell);
        for (long long a = 1; a < ell; ++a) acc += c.at(a) * group.character(j, a);
        lambda.values.push_back(acc);
    }
    return lambda;
}

ClassParameter c_from_lambda(const CyclicGroup& group, const LambdaVector& lambda) {
    const long long ell = group.order();
    if (lambda.ell != ell) throw errors::order_mismatch("lambda order differs from group order");
    if (static_cast<long long>(lambda.values.size()) != ell)
        throw errors::dimension_mismatch("lambda vector must have ell values");
    Cyclotomic total = regular_trace(group, lambda);
    if (total != Cyclotomic(Rational(ell), ell))
        throw errors::consistency("sum of lambda components must equal ell exactly "
                                  "(identity coefficient of Lambda is fixed at 1); got " +
                                  total.to_string());
    ClassParameter c;
    c.ell = ell;
    const Rational inv_ell = Rational(1, ell);
    for (long long a = 1; a < ell; ++a) {
        Cyclotomic acc(Rational(0), ell);
        for (long long j = 0; j < ell; ++j)
            acc += (lambda.at(j) - Cyclotomic(1)) * group.character(j, -a);
        c.values.push_back(Cyclotomic(inv_ell) * acc);
    }
    return c;
}

Cyclotomic regular_trace(const CyclicGroup& group, const LambdaVector& lambda) {
    Cyclotomic acc(Rational(0), group.order());
    for (const Cyclotomic& v : lambda.values) acc += v;
    return acc;
}

}  // namespace sra
