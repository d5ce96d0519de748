/*
 * Copyright 2026 The rotovort Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Compiled as C: the public header must stay valid C. */

#include <math.h>
#include <stdlib.h>

#include "rotovort/rotovort.h"

int rv_test_c_lifecycle(void) {
  rv_field* f = NULL;
  rv_energy e;
  rv_minimize_options opts;
  rv_minimize_report rep;
  double* values;
  int n_r = 0, n_theta = 0;
  if (rv_field_create(0.2, 0.0, 16, 32, RV_INIT_CONSTANT, 0, &f) != RV_OK) return 1;
  if (rv_field_shape(f, &n_r, &n_theta) != RV_OK || n_r != 16 || n_theta != 32) return 2;
  if (rv_field_energy(f, &e) != RV_OK || fabs(e.total - 25.0 / 3.14159265358979323846) > 1e-10) return 3;
  values = (double*)malloc(sizeof(double) * 2 * 16 * 32);
  if (!values) return 4;
  if (rv_field_get_values(f, values, 2 * 16 * 32) != RV_OK) return 5;
  if (rv_field_set_values(f, values, 2 * 16 * 32) != RV_OK) return 6;
  free(values);
  rv_minimize_defaults(&opts);
  if (rv_field_minimize(f, &opts, &rep) != RV_OK || !rep.converged) return 7;
  rv_field_destroy(f);
  return 0;
}
