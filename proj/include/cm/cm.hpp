#pragma once

#include "cm/core.hpp"
#include "cm/atomic.hpp"
#include "cm/grid.hpp"
#include "cm/gaussian.hpp"
#include "cm/tail.hpp"
#include "cm/cylinder.hpp"
#include "cm/translation.hpp"
#include "cm/laplacian.hpp"
#include "cm/random.hpp"
#include "cm/io.hpp"
