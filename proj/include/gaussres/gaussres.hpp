#pragma once

#include "gaussres/channel.hpp"
#include "gaussres/factory.hpp"
#include "gaussres/io.hpp"
#include "gaussres/maximize.hpp"
#include "gaussres/modes.hpp"
#include "gaussres/quantifiers.hpp"
#include "gaussres/state.hpp"
#include "gaussres/sweep.hpp"
#include "gaussres/symplectic.hpp"
