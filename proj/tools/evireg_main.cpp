#include "evireg/special_functions.hpp"

#include <cstdio>

int main() {
    std::printf("evireg placeholder: lgamma(5)=%.6f\n", evireg::log_gamma(5.0));
    return 0;
}
