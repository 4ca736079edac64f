#pragma once

#include "lowphy/estimation.hpp"
#include "lowphy/fft.hpp"
#include "lowphy/precoding.hpp"
#include "lowphy/steering.hpp"
