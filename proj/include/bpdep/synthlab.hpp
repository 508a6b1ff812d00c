#pragma once

// Seeded generators for the worked examples and the property-test
// distributions, as exact pmfs (when discrete) and as sample tables.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bpdep/pmf.hpp"
#include "bpdep/samples.hpp"

namespace bpdep {

enum class GeneratorId {
    Example1,            // X ~ U(0,1), Y = -1 if X <= 1/2 else 1
    Example2,            // X uniform on {1,2,3,4}, Y = X mod 2
    Example3,            // Example2 relabeled to symbols
    SelectionMixture,    // X = Y_S, S ~ p, Y_1..Y_N independent discrete
    NoisyUniform,        // X ~ U(0,1), Y = X + N(0, sigma^2)
    IndependentPair,     // independent uniform labels on rows x cols
    IndependentUniform,  // X, Y ~ U(0,1) independent
    RandomJoint,         // rows x cols joint with uniform random cell weights
    QuadraticLink,       // Y ~ U(-1,1), X = Y^2
};

std::string to_string(GeneratorId id);
std::optional<GeneratorId> generator_from_string(std::string_view name);
bool is_discrete(GeneratorId id);

struct GeneratorSpec {
    GeneratorId id = GeneratorId::Example2;
    std::size_t n = 5000;
    std::uint64_t seed = 42;
    double sigma = 0.1;
    std::vector<double> mixture_weights{};
    std::vector<MarginalPmf> components{};
    std::size_t target = 0;  // 0-based index of the Y_i paired with X
    int rows = 3;
    int cols = 3;

    void validate() const;

    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

GeneratorSpec selection_mixture(std::vector<double> weights, std::vector<MarginalPmf> components, std::size_t target);

/// Exact joint of a discrete construction. Throws std::invalid_argument for
/// Example1, NoisyUniform, IndependentUniform and QuadraticLink.
JointPmf exact_pmf(const GeneratorSpec& spec);

/// n rows drawn with CounterRng(spec.seed). Same spec, same table.
SampleTable sample(const GeneratorSpec& spec);

/// Plain "key = value" lines; '#' starts a comment.
std::string serialize(const GeneratorSpec& spec);
GeneratorSpec parse_generator_spec(std::string_view text);

}  // namespace bpdep
