#pragma once
#include "fa2f/z3_brick.hpp"
#include "fa2f/z3_constants.hpp"
#include "fa2f/z3_moves.hpp"
#include "fa2f/z3_sail.hpp"
