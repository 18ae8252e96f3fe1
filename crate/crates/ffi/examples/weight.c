/* cc weight.c -I../include -L../../../target/debug -ljackweight_ffi -lm -o weight */
#include <stdio.h>
#include "jackweight.h"

int main(void) {
    size_t parts[] = {2, 1};
    JwIrrep *ir = NULL;
    JwWeight *w = NULL;
    double theta[] = {0.1, 2.0, 4.0}, k[8], gap, min_eig;

    if (jw_irrep_new(parts, 2, &ir) != JW_STATUS_OK || jw_solve_h(ir, 0.1, 0.0, &w) != JW_STATUS_OK) {
        fprintf(stderr, "error: %s\n", jw_last_error());
        return 1;
    }
    jw_weight_diagnostics(w, &gap, &min_eig);
    jw_weight_k(w, theta, 3, k, 8);
    printf("gap %.3e  min eig %.6f\n", gap, min_eig);
    for (int r = 0; r < 2; r++)
        printf("[%+.6f%+.6fi  %+.6f%+.6fi]\n", k[4 * r], k[4 * r + 1], k[4 * r + 2], k[4 * r + 3]);
    jw_weight_free(w);
    jw_irrep_free(ir);
    return 0;
}
