#include "schatten/generators.hpp"

#include <array>
#include <cmath>
#include <string>

#include "schatten/errors.hpp"
#include "schatten/rng.hpp"

namespace schatten {

namespace {

constexpr std::array<std::pair<GeneratorKind, std::string_view>, 10> kKindNames{{
    {GeneratorKind::ginibre, "ginibre"},
    {GeneratorKind::hermitian, "hermitian"},
    {GeneratorKind::psd, "psd"},
    {GeneratorKind::real, "real"},
    {GeneratorKind::diagonal, "diagonal"},
    {GeneratorKind::scalar, "scalar"},
    {GeneratorKind::rank_deficient, "rank_deficient"},
    {GeneratorKind::with_zeros, "with_zeros"},
    {GeneratorKind::mean_centered, "mean_centered"},
    {GeneratorKind::pair_equal_sums, "pair_equal_sums"},
}};

Matrix ginibre(Xoshiro256& rng, long rows, long cols) {
    Matrix m(rows, cols);
    for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = rng.complex_normal();
    return m;
}

Matrix draw_member(GeneratorKind kind, Xoshiro256& rng, long rows, long cols) {
    switch (kind) {
    case GeneratorKind::hermitian: {
        Matrix g = ginibre(rng, rows, cols);
        symmetrize(g);
        return g;
    }
    case GeneratorKind::psd:
        return gram(ginibre(rng, rows, cols));
    case GeneratorKind::real: {
        Matrix m(rows, cols);
        for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = Complex(rng.normal(), 0);
        return m;
    }
    case GeneratorKind::diagonal: {
        Matrix m = Matrix::Zero(rows, cols);
        for (long i = 0; i < std::min(rows, cols); ++i) m(i, i) = rng.complex_normal();
        return m;
    }
    case GeneratorKind::scalar: {
        const Complex z = rng.complex_normal();
        Matrix m = Matrix::Zero(rows, cols);
        for (long i = 0; i < std::min(rows, cols); ++i) m(i, i) = z;
        return m;
    }
    case GeneratorKind::rank_deficient: {
        const long inner = std::max(1L, std::min(rows, cols) / 2);
        const Matrix left = ginibre(rng, rows, inner);
        const Matrix right = ginibre(rng, inner, cols);
        return (left * right) / std::sqrt(static_cast<double>(inner));
    }
    default:
        return ginibre(rng, rows, cols);
    }
}

std::vector<Matrix> draw_family(GeneratorKind kind, Xoshiro256& rng, const GeneratorSpec& spec) {
    std::vector<Matrix> members;
    members.reserve(static_cast<std::size_t>(spec.n));
    for (int i = 0; i < spec.n; ++i) members.push_back(draw_member(kind, rng, spec.rows, spec.cols) * spec.scale);
    return members;
}

} // namespace

std::string_view to_string(GeneratorKind k) {
    for (const auto& [kind, name] : kKindNames) {
        if (kind == k) return name;
    }
    return "ginibre";
}

GeneratorKind parse_generator_kind(std::string_view s) {
    for (const auto& [kind, name] : kKindNames) {
        if (name == s) return kind;
    }
    throw ValidationError("unknown generator kind '" + std::string(s) + "'");
}

void GeneratorSpec::validate() const {
    if (n < 1) throw ValidationError("generator: n must be >= 1");
    if (rows < 1 || cols < 1) throw ValidationError("generator: rows and cols must be >= 1");
    if (!(scale > 0) || !std::isfinite(scale)) throw ValidationError("generator: scale must be finite and > 0");
    if (zeros < 0 || zeros > n) throw ValidationError("generator: zeros must lie in [0, n]");
    if ((kind == GeneratorKind::hermitian || kind == GeneratorKind::psd) && rows != cols) {
        throw ValidationError(std::string("generator: kind '") + std::string(to_string(kind)) + "' requires rows == cols");
    }
    if ((kind == GeneratorKind::mean_centered || kind == GeneratorKind::pair_equal_sums) && zeros != 0) {
        throw ValidationError("generator: structural zeros would break the sum constraint of this kind");
    }
}

nlohmann::json to_json(const GeneratorSpec& s) {
    return {{"kind", std::string(to_string(s.kind))},
            {"n", s.n},
            {"rows", s.rows},
            {"cols", s.cols},
            {"scale", s.scale},
            {"seed", s.seed},
            {"zeros", s.zeros}};
}

GeneratorSpec generator_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("generator spec: expected a JSON object");
    GeneratorSpec s;
    try {
        if (j.contains("kind")) s.kind = parse_generator_kind(j.at("kind").get<std::string>());
        if (j.contains("n")) s.n = j.at("n").get<int>();
        if (j.contains("rows")) s.rows = j.at("rows").get<long>();
        if (j.contains("cols")) s.cols = j.at("cols").get<long>();
        if (j.contains("scale")) s.scale = j.at("scale").get<double>();
        if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("zeros")) s.zeros = j.at("zeros").get<int>();
        if (j.contains("k")) s.zeros = j.at("k").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("generator spec: ") + e.what());
    }
    s.validate();
    return s;
}

Family generate(const GeneratorSpec& spec) {
    spec.validate();
    Xoshiro256 rng(spec.seed);
    if (spec.kind == GeneratorKind::pair_equal_sums) return generate_pair_equal_sums(spec).first;

    auto members = draw_family(spec.kind, rng, spec);
    if (spec.kind == GeneratorKind::mean_centered) {
        Matrix mean = Matrix::Zero(spec.rows, spec.cols);
        for (const auto& m : members) mean += m;
        mean /= static_cast<double>(spec.n);
        for (auto& m : members) m -= mean;
    }
    for (int i = 0; i < spec.zeros; ++i) members[static_cast<std::size_t>(i)].setZero();
    return Family(std::move(members));
}

std::pair<Family, Family> generate_pair_equal_sums(const GeneratorSpec& spec) {
    spec.validate();
    Xoshiro256 rng(spec.seed);
    auto a = draw_family(GeneratorKind::ginibre, rng, spec);
    auto b = draw_family(GeneratorKind::ginibre, rng, spec);
    if (spec.n == 1) {
        b[0] = a[0];
    } else {
        Matrix shift = Matrix::Zero(spec.rows, spec.cols);
        for (const auto& m : a) shift += m;
        for (const auto& m : b) shift -= m;
        shift /= static_cast<double>(spec.n);
        for (auto& m : b) m += shift;
    }
    return {Family(std::move(a)), Family(std::move(b))};
}

Matrix random_unitary(long dim, std::uint64_t seed) {
    if (dim < 1) throw ValidationError("random_unitary: dim must be >= 1");
    Xoshiro256 rng(seed);
    Matrix q = ginibre(rng, dim, dim);
    for (long j = 0; j < dim; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (long k = 0; k < j; ++k) {
                const Complex proj = q.col(k).dot(q.col(j)); // conj(q_k) . q_j
                q.col(j) -= proj * q.col(k);
            }
        }
        q.col(j) /= q.col(j).norm();
    }
    return q;
}

} // namespace schatten
