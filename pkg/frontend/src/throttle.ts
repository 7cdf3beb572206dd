/**
 * Rate limiter for slider drags: at most one call per interval, with the
 * latest value always delivered (leading + trailing edges).
 */
export function throttleLatest<T>(
  fn: (value: T) => void,
  intervalMs: number,
): (value: T) => void {
  let lastFire = -Infinity;
  let pending: T | undefined;
  let hasPending = false;
  let timer: ReturnType<typeof setTimeout> | null = null;

  const flush = () => {
    timer = null;
    if (hasPending) {
      hasPending = false;
      lastFire = Date.now();
      const v = pending as T;
      pending = undefined;
      fn(v);
    }
  };

  return (value: T) => {
    const now = Date.now();
    if (now - lastFire >= intervalMs && timer === null) {
      lastFire = now;
      fn(value);
      return;
    }
    pending = value;
    hasPending = true;
    if (timer === null) {
      timer = setTimeout(flush, Math.max(0, intervalMs - (now - lastFire)));
    }
  };
}
