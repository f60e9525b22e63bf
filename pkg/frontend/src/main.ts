/** DOM glue: mounts the session controller and wires events. */

import { AnnotationApi } from "./api.js";
import { renderApp, SessionController } from "./view.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

const api = new AnnotationApi();
const controller = new SessionController(api, (state) => {
  root.innerHTML = renderApp(state);
});

root.addEventListener("click", (event) => {
  const target = event.target as HTMLElement;
  const candidate = target.closest<HTMLElement>(".candidate");
  if (candidate?.dataset.sense) {
    controller.choose(candidate.dataset.sense);
    return;
  }
  if (target.closest("#submit")) {
    void controller.submit();
    return;
  }
  if (target.closest("#retry")) {
    void controller.fetchNext();
  }
});

document.addEventListener("keydown", (event) => {
  if (event.key >= "1" && event.key <= "9") {
    controller.chooseByIndex(Number(event.key));
  } else if (event.key === "Enter" && controller.canSubmit()) {
    void controller.submit();
  }
});

void controller.refreshCurve().then(() => controller.fetchNext());
