#pragma once

#include "lowphy/bench.hpp"
#include "lowphy/complex_matrix.hpp"
#include "lowphy/input_gen.hpp"
#include "lowphy/kernels.hpp"
#include "lowphy/split_complex.hpp"
#include "lowphy/vector_machine.hpp"
