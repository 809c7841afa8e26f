// Draws a filled heart using the implicit heart curve, scaled and positioned by parameters
function initializeParams() {
    return {
        heartPositionX: Math.floor(ShapeDisplay.grid_x / 2), // X position of the heart's center
        heartPositionY: Math.floor(ShapeDisplay.grid_y / 2), // Y position of the heart's center
        heartScale: 6, // Radius-like scale of the heart in pin units
        heartHeight: 40, // Height of the raised pins forming the heart
    };
}

// Classic heart curve: (x^2 + y^2 - 1)^3 - x^2 * y^3 <= 0
function isInsideHeart(nx, ny) {
    const a = nx * nx + ny * ny - 1;
    return a * a * a - nx * nx * ny * ny * ny <= 0;
}

function dynamicScript(deltaTime, params) {
    const { heartPositionX, heartPositionY, heartScale, heartHeight } = params;
    ShapeDisplay.Pins.forEach((pin, index) => {
        const x = (index % ShapeDisplay.grid_x) - heartPositionX;
        const y = Math.floor(index / ShapeDisplay.grid_x) - heartPositionY;
        const nx = x / heartScale;
        const ny = -y / heartScale; // grid y grows downward; flip so the heart points down
        if (isInsideHeart(nx, ny)) {
            pin.setPos(heartHeight);
        }
    });
}
