#include <math.h>
#include <stdio.h>
#include <string.h>

#include "acbm.h"

#define CHECK(cond)                                            \
    do {                                                       \
        if (!(cond)) {                                         \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                          \
        }                                                      \
    } while (0)

int main(void) {
    const double u[3] = {0.7853981633974483, 0.3, -0.2};
    AcbmPoint *p = NULL;
    CHECK(acbm_point_new("s31", 1.0, u, &p) == ACBM_STATUS_OK);

    double gamma[27];
    CHECK(acbm_tensor_len(ACBM_TENSOR_GAMMA) == 27);
    CHECK(acbm_point_tensor(p, ACBM_TENSOR_GAMMA, gamma, 27) == ACBM_STATUS_OK);
    /* Γ²₂₁ = −tan u¹ / r, stored [k][i][j] */
    CHECK(fabs(gamma[1 * 9 + 1 * 3 + 0] + 1.0) < 1e-9);

    AcbmScalars s;
    CHECK(acbm_point_scalars(p, &s) == ACBM_STATUS_OK);
    CHECK(fabs(s.tau - 6.0) < 1e-9);

    char *classes = NULL;
    CHECK(acbm_point_classes(p, &classes) == ACBM_STATUS_OK);
    CHECK(strcmp(classes, "F9") == 0);
    acbm_string_free(classes);
    acbm_point_free(p);

    const double pole[3] = {0.0, 0.0, 0.0};
    CHECK(acbm_point_new("s31", 1.0, pole, &p) == ACBM_STATUS_DOMAIN);
    CHECK(p == NULL);
    CHECK(acbm_last_error_message() != NULL);

    printf("ok %s\n", acbm_version());
    return 0;
}
