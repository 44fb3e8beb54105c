/* Generated by sptrsv-rewrite. Do not edit. */
#define N 40
#define NNZ 86

static const long row_ptr[N + 1] = {
    0, 1, 3, 5, 7, 9, 12, 14,
    16, 18, 20, 23, 25, 27, 29, 31,
    34, 36, 38, 40, 42, 45, 47, 49,
    51, 53, 56, 58, 60, 62, 64, 67,
    69, 71, 73, 75, 78, 80, 82, 84,
    86,
};
static const long col_idx[NNZ] = {
    0, 0, 1, 1, 2, 2, 3, 3,
    4, 0, 4, 5, 5, 6, 6, 7,
    7, 8, 8, 9, 5, 9, 10, 10,
    11, 11, 12, 12, 13, 13, 14, 10,
    14, 15, 15, 16, 16, 17, 17, 18,
    18, 19, 15, 19, 20, 20, 21, 21,
    22, 22, 23, 23, 24, 20, 24, 25,
    25, 26, 26, 27, 27, 28, 28, 29,
    25, 29, 30, 30, 31, 31, 32, 32,
    33, 33, 34, 30, 34, 35, 35, 36,
    36, 37, 37, 38, 38, 39,
};
static const double val[NNZ] = {
    2.0, -1.0, 3.0, -1.0, 4.0, -1.0, 2.0, -1.0,
    3.0, 0.25, -1.0, 4.0, -1.0, 2.0, -1.0, 3.0,
    -1.0, 4.0, -1.0, 2.0, 0.25, -1.0, 3.0, -1.0,
    4.0, -1.0, 2.0, -1.0, 3.0, -1.0, 4.0, 0.25,
    -1.0, 2.0, -1.0, 3.0, -1.0, 4.0, -1.0, 2.0,
    -1.0, 3.0, 0.25, -1.0, 4.0, -1.0, 2.0, -1.0,
    3.0, -1.0, 4.0, -1.0, 2.0, 0.25, -1.0, 3.0,
    -1.0, 4.0, -1.0, 2.0, -1.0, 3.0, -1.0, 4.0,
    0.25, -1.0, 2.0, -1.0, 3.0, -1.0, 4.0, -1.0,
    2.0, -1.0, 3.0, 0.25, -1.0, 4.0, -1.0, 2.0,
    -1.0, 3.0, -1.0, 4.0, -1.0, 2.0,
};

/* rows end with their diagonal entry */
void sptrsv_fallback(const double *b, double *x)
{
    for (long i = 0; i < N; i++) {
        double sum = b[i];
        long last = row_ptr[i + 1] - 1;
        for (long k = row_ptr[i]; k < last; k++)
            sum -= val[k] * x[col_idx[k]];
        x[i] = sum / val[last];
    }
}
