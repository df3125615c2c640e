// Application entry: wire the service client, session, panels, source
// views, and the positioning canvas into the page.

import { ApiClient, ApiError } from "./api.js";
import { PositioningCanvas } from "./canvas.js";
import { HelpPanel, SelectionPanel } from "./panels.js";
import { renderApplication } from "./render.js";
import { StudioSession } from "./session.js";
import type { ApplicationDocument } from "./types.js";

function toast(message: string): void {
    const element = document.createElement("div");
    element.className = "toast";
    element.textContent = message;
    document.body.appendChild(element);
    setTimeout(() => element.remove(), 4000);
}

async function readDocuments(files: FileList): Promise<ApplicationDocument[]> {
    const documents: ApplicationDocument[] = [];
    for (const file of Array.from(files)) {
        documents.push(JSON.parse(await file.text()) as ApplicationDocument);
    }
    return documents;
}

function main(): void {
    const query = new URLSearchParams(window.location.search);
    const api = new ApiClient(query.get("service") ?? undefined);
    const session = new StudioSession(api);

    const sourcesView = document.getElementById("sources")!;
    const composedView = document.getElementById("composed")!;
    const toolbar = document.getElementById("toolbar")!;
    const panels = document.getElementById("panels")!;

    panels.appendChild(new SelectionPanel(session).element);
    panels.appendChild(new HelpPanel(session).element);

    const canvas = new PositioningCanvas({
        place: async (subject, relation, anchor) => {
            const screen = session.state.composed?.screens.at(-1);
            if (!screen) return;
            try {
                await session.place(screen.id, subject, relation, anchor);
            } catch (error) {
                if (error instanceof ApiError && error.status === 409) {
                    toast(error.message);
                }
                throw error;
            }
        },
    });
    composedView.appendChild(canvas.element);

    const fileInput = document.createElement("input");
    fileInput.type = "file";
    fileInput.accept = "application/json";
    fileInput.multiple = true;
    fileInput.addEventListener("change", async () => {
        if (!fileInput.files) return;
        try {
            for (const doc of await readDocuments(fileInput.files)) {
                await session.loadDocument(doc);
            }
        } catch (error) {
            toast(error instanceof Error ? error.message : String(error));
        }
        fileInput.value = "";
    });
    toolbar.appendChild(fileInput);

    const extractButton = document.createElement("button");
    extractButton.textContent = "Extract to new screen";
    extractButton.addEventListener("click", async () => {
        const name = window.prompt("Screen name", "Composed screen");
        if (!name) return;
        try {
            await session.extract("new", name);
        } catch {
            // notice is already set; the panels show it
        }
    });
    toolbar.appendChild(extractButton);

    const exportButton = document.createElement("button");
    exportButton.textContent = "Export";
    exportButton.addEventListener("click", async () => {
        try {
            const text = await session.exportDocument();
            const blob = new Blob([text], { type: "application/json" });
            const link = document.createElement("a");
            link.href = URL.createObjectURL(blob);
            link.download = "composed.json";
            link.click();
            URL.revokeObjectURL(link.href);
        } catch {
            // notice is already set
        }
    });
    toolbar.appendChild(exportButton);

    const logButton = document.createElement("button");
    logButton.textContent = "Save session log";
    logButton.addEventListener("click", () => {
        const blob = new Blob([session.recorder.text()], { type: "text/plain" });
        const link = document.createElement("a");
        link.href = URL.createObjectURL(blob);
        link.download = "session.log";
        link.click();
        URL.revokeObjectURL(link.href);
    });
    toolbar.appendChild(logButton);

    session.onChange((state) => {
        sourcesView.textContent = "";
        const selected = new Set(state.selection);
        for (const source of state.sources) {
            sourcesView.appendChild(
                renderApplication(source, {
                    selected,
                    onComponentClick: (id) => {
                        const action = selected.has(id)
                            ? session.deselect(id)
                            : session.select(id);
                        void action.catch(() => undefined);
                    },
                }),
            );
        }
        canvas.render(state.composed?.screens.at(-1) ?? null);
    });

    session.init().catch((error) => toast(`Service unreachable: ${error}`));
}

main();
