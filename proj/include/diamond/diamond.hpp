#pragma once

#include "diamond/af.hpp"
#include "diamond/cuts.hpp"
#include "diamond/error.hpp"
#include "diamond/model.hpp"
#include "diamond/selection.hpp"
