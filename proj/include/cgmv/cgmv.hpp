#pragma once
// umbrella header

#include "cmv.hpp"
#include "coin.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "limits.hpp"
#include "opuc.hpp"
#include "parallel.hpp"
#include "spectral.hpp"
#include "verblunsky.hpp"
#include "walk.hpp"
