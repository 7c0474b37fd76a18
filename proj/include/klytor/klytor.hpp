#pragma once

#include "klytor/exact_linalg.hpp"
#include "klytor/fan.hpp"
#include "klytor/klyachko.hpp"
#include "klytor/parliament.hpp"
#include "klytor/plfunc.hpp"
#include "klytor/positivity.hpp"
#include "klytor/tropical.hpp"
