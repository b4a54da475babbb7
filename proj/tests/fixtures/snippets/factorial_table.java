public static double factorial(int s) {
  if (s < 0 || s > 17)
    return Double.NaN;
  double[] a = { 1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0, 362880.0, 3628800.0, 39916800.0, 479001600.0, 6227020800.0, 87178291200.0, 1307674368000.0, 20922789888000.0, 355687428096000.0 };
  return a[s];
}
