#pragma once

#include "dho/complex_time.hpp"
#include "dho/driven.hpp"
#include "dho/io.hpp"
#include "dho/mode_transform.hpp"
#include "dho/oscillator.hpp"
#include "dho/quantum_evolution.hpp"
#include "dho/verify.hpp"
