#pragma once

#include <cstdint>
#include <string_view>
#include <utility>

#include "json.hpp"
#include "schatten/matrix.hpp"

namespace schatten {

enum class GeneratorKind {
    ginibre,        // i.i.d. complex Gaussian entries, unit second moment
    hermitian,      // (G + G*)/2
    psd,            // G*G
    real,           // real standard Gaussian entries
    diagonal,       // complex Gaussian main diagonal, zeros elsewhere
    scalar,         // z times the (rectangular) identity
    rank_deficient, // product through an inner dimension of max(1, min(rows, cols)/2)
    with_zeros,     // ginibre with the first k members exactly zero
    mean_centered,  // ginibre minus the family mean; sums to zero
    pair_equal_sums // two ginibre families with matched sums
};

std::string_view to_string(GeneratorKind k);
GeneratorKind parse_generator_kind(std::string_view s);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::ginibre;
    int n = 2;
    long rows = 2;
    long cols = 2;
    double scale = 1.0;
    std::uint64_t seed = 0;
    int zeros = 0; // structural-zero prefix; required by with_zeros, allowed for the element-wise kinds

    void validate() const;
};

nlohmann::json to_json(const GeneratorSpec& s);
GeneratorSpec generator_spec_from_json(const nlohmann::json& j);

/// Deterministic family for a fixed spec. For pair_equal_sums this is the first family of the pair.
Family generate(const GeneratorSpec& spec);

/// Two families whose sums agree: B_i += (sum A - sum B)/n; for n = 1, B_1 = A_1.
std::pair<Family, Family> generate_pair_equal_sums(const GeneratorSpec& spec);

/// Unitary from a Ginibre draw by Gram-Schmidt with one re-orthogonalization pass.
Matrix random_unitary(long dim, std::uint64_t seed);

} // namespace schatten
