/**
 * Keyboard navigation as a pure key-to-action table, so a key press can be
 * tested without a DOM. The page dispatches the returned action.
 *
 * Layout: arrows or j/k walk the queue, PageUp/PageDown jump a page,
 * digits pick an option row, n marks N/A, q/w/e/r rate accuracy from
 * "not at all" to "very accurate", Enter submits, f flips the filter.
 */

export type KeyAction =
  | { type: "move"; delta: number }
  | { type: "page"; delta: number }
  | { type: "select"; index: number }
  | { type: "na" }
  | { type: "accuracy"; index: number }
  | { type: "submit" }
  | { type: "toggle-filter" };

const ACCURACY_KEYS = ["q", "w", "e", "r"];

export function keyToAction(key: string): KeyAction | null {
  switch (key) {
    case "ArrowDown":
    case "j":
      return { type: "move", delta: 1 };
    case "ArrowUp":
    case "k":
      return { type: "move", delta: -1 };
    case "PageDown":
      return { type: "page", delta: 1 };
    case "PageUp":
      return { type: "page", delta: -1 };
    case "n":
    case "N":
      return { type: "na" };
    case "Enter":
      return { type: "submit" };
    case "f":
    case "F":
      return { type: "toggle-filter" };
    default:
      break;
  }
  if (/^[1-9]$/.test(key)) {
    return { type: "select", index: Number(key) - 1 };
  }
  const accuracyIndex = ACCURACY_KEYS.indexOf(key.toLowerCase());
  if (accuracyIndex >= 0 && key.length === 1) {
    return { type: "accuracy", index: accuracyIndex };
  }
  return null;
}
