#pragma once

#include "fockmesh/fock.hpp"
#include "fockmesh/io.hpp"
#include "fockmesh/lift.hpp"
#include "fockmesh/mesh.hpp"
#include "fockmesh/states.hpp"
#include "fockmesh/sweep.hpp"
#include "fockmesh/symop.hpp"
