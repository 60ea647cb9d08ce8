#include "gcx/random.hpp"

#include "gcx/gauss.hpp"

#include <stdexcept>

namespace gcx {

double CounterRng::next_normal() {
    return std_normal_quantile(next_uniform());
}

std::vector<double> sample_gaussian(std::size_t dim, std::size_t count, SeededStream stream) {
    if (dim == 0 || count == 0)
        throw std::invalid_argument("sample_gaussian: dim and count must be positive");
    CounterRng rng(stream);
    std::vector<double> out(dim * count);
    for (double& v : out) v = rng.next_normal();
    return out;
}

}  // namespace gcx
