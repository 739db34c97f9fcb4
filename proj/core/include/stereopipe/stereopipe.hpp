#pragma once

#include "stereopipe/aggregate.hpp"
#include "stereopipe/cost.hpp"
#include "stereopipe/eval.hpp"
#include "stereopipe/io.hpp"
#include "stereopipe/match.hpp"
#include "stereopipe/oracle.hpp"
#include "stereopipe/params.hpp"
#include "stereopipe/pipeline.hpp"
#include "stereopipe/preprocess.hpp"
#include "stereopipe/refine.hpp"
#include "stereopipe/rescale.hpp"
#include "stereopipe/synthetic.hpp"
#include "stereopipe/types.hpp"
