#pragma once

#include "fock_smirnov/words.hpp"
#include "fock_smirnov/series.hpp"
#include "fock_smirnov/fock_ops.hpp"
#include "fock_smirnov/smirnov.hpp"
#include "fock_smirnov/commutative.hpp"
#include "fock_smirnov/cnp.hpp"
#include "fock_smirnov/json_io.hpp"
