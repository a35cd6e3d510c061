#ifndef MTEVO_BASE_FUNCTION_HPP
#define MTEVO_BASE_FUNCTION_HPP

#include <string_view>

namespace mtevo {

/// The seven base test functions all benchmarks are assembled from.
enum class BaseFunctionId {
    Sphere,
    Rosenbrock,
    Ackley,
    Rastrigin,
    Griewank,
    Weierstrass,
    Schwefel,
};

constexpr std::string_view base_function_name(BaseFunctionId id) {
    switch (id) {
        case BaseFunctionId::Sphere: return "sphere";
        case BaseFunctionId::Rosenbrock: return "rosenbrock";
        case BaseFunctionId::Ackley: return "ackley";
        case BaseFunctionId::Rastrigin: return "rastrigin";
        case BaseFunctionId::Griewank: return "griewank";
        case BaseFunctionId::Weierstrass: return "weierstrass";
        case BaseFunctionId::Schwefel: return "schwefel";
    }
    return "unknown";
}

}  // namespace mtevo

#endif
